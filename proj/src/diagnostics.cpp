#include "nsch/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nsch {

namespace {

using Array = GridArray<double>;

constexpr double kArea = 4.0 * std::numbers::pi * std::numbers::pi;

double cell_area(const Array& a) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(a.rows());
  return h * h;
}

void require_mean_zero(const ScalarField& theta, const char* op) {
  const double m = mean(theta);
  if (std::abs(m) > 1e-12 * (1.0 + l2_norm(theta))) {
    std::ostringstream os;
    os.precision(17);
    os << op << " requires a mean-zero order parameter, got mean " << m;
    throw PreconditionError(os.str());
  }
}

}  // namespace

const std::vector<std::string>& record_field_names() {
  static const std::vector<std::string> names = {
      "t",          "mass",      "E_kin",     "E_free",     "E_total",          "dissipation",
      "theta_min",  "theta_max", "delta",     "grad_mu_l2", "mean_phi",         "sobolev_h1_theta",
      "sobolev_h1_u", "d0eps_norm", "clamp_events", "energy_residual"};
  return names;
}

double free_energy(const ScalarField& theta, const SchemeConfig& cfg, int oversample) {
  const double grad_sq = std::pow(l2_norm(derivative(theta, 0)), 2) + std::pow(l2_norm(derivative(theta, 1)), 2);
  const Array th = sample(theta, oversample);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < th.size(); ++j) acc += Phi(th(j), cfg.potential);
  return 0.5 * cfg.kappa * grad_sq + acc * cell_area(th) / cfg.kappa;
}

double kinetic_energy(const VectorField& u) { return 0.5 * std::pow(l2_norm(u), 2); }

double dissipation(const ScalarField& theta, const VectorField& u, const SchemeConfig& cfg) {
  const ScalarField mu = chemical_potential(theta, cfg);
  const double chem = cfg.mobility * (std::pow(l2_norm(derivative(mu, 0)), 2) + std::pow(l2_norm(derivative(mu, 1)), 2));
  if (u.u1.coeffs().isZero(0.0) && u.u2.coeffs().isZero(0.0)) return chem;

  constexpr int factor = 2;
  const Array d11 = sample(derivative(u.u1, 0), factor);
  const Array d22 = sample(derivative(u.u2, 1), factor);
  const Array d12 = 0.5 * (sample(derivative(u.u1, 1), factor) + sample(derivative(u.u2, 0), factor));
  const Array th = sample(theta, factor);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < th.size(); ++j) {
    const double dd = d11(j) * d11(j) + d22(j) * d22(j) + 2.0 * d12(j) * d12(j);
    acc += 2.0 * cfg.viscosity(th(j)) * dd;
  }
  return chem + acc * cell_area(th);
}

double total_energy(const SimState& s, const SchemeConfig& cfg, int oversample) {
  return kinetic_energy(s.u) + free_energy(s.theta, cfg, oversample);
}

double energy_law_residual(const SimState& before, const SimState& after, const SchemeConfig& cfg, int oversample) {
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw PreconditionError("energy_law_residual needs states ordered in time");
  const double dE = total_energy(after, cfg, oversample) - total_energy(before, cfg, oversample);
  return std::abs(dE / dt + dissipation(after.theta, after.u, cfg));
}

double D0EpsTerms::norm() const { return std::sqrt(h2_sq + phi_l2_sq + eps_w_l2_sq + w_hm1_sq); }

D0EpsTerms d0_eps_terms(const ScalarField& theta, double eps, const PotentialParams& p, int oversample) {
  if (!(eps >= 0.0)) throw PreconditionError("d0_eps_norm requires eps >= 0");
  require_mean_zero(theta, "d0_eps_norm");
  const Array th = sample(theta, oversample);
  Array ph(th.rows(), th.cols());
  for (Eigen::Index j = 0; j < th.size(); ++j) ph(j) = phi(th(j), p);
  const ScalarField phi_f = project_samples(theta.grid(), ph);

  ScalarField bracket = laplacian(theta) - phi_f;
  bracket.coeffs()(0, 0) = 0.0;  // + m(phi(f)) removes the zero mode
  const ScalarField w = apply_multiplier(bracket, [eps](int k1, int k2, bool, bool) {
    const double kk = double(k1 * k1 + k2 * k2);
    return kk == 0.0 ? 0.0 : kk / (eps * kk + 1.0);
  });

  D0EpsTerms t;
  t.h2_sq = std::pow(sobolev_norm(theta, 2.0), 2);
  t.phi_l2_sq = (ph * ph).sum() * cell_area(ph);
  t.eps_w_l2_sq = eps * std::pow(l2_norm(w), 2);
  t.w_hm1_sq = std::pow(homogeneous_sobolev_norm(w, -1.0), 2);
  return t;
}

double d0_eps_norm(const ScalarField& theta, double eps, const PotentialParams& p, int oversample) {
  return d0_eps_terms(theta, eps, p, oversample).norm();
}

MeanPhiReport mean_phi_check(const ScalarField& theta, const PotentialParams& p, int oversample) {
  require_mean_zero(theta, "mean_phi_check");
  const Array th = sample(theta, oversample);
  if (th.abs().maxCoeff() > 1.0) throw PreconditionError("mean_phi_check requires |theta| <= 1");
  Array ph(th.rows(), th.cols());
  for (Eigen::Index j = 0; j < th.size(); ++j) ph(j) = phi(th(j), p);
  const double da = cell_area(th);
  MeanPhiReport r;
  r.mean_phi = ph.sum() * da / kArea;
  const Array f = ph - r.mean_phi;
  r.lhs = (ph * th).sum() * da;
  r.rhs = (f * th).sum() * da;
  r.f_l1 = f.abs().sum() * da;
  r.identity_residual = std::abs(r.lhs - r.rhs);
  r.ratio = std::abs(r.mean_phi) / (r.f_l1 + 1.0);
  return r;
}

double phi_prime_lp(const std::vector<std::pair<double, ScalarField>>& samples, double p_exp,
                    const PotentialParams& p, int oversample) {
  if (!(p_exp >= 1.0) || !std::isfinite(p_exp)) throw PreconditionError("phi_prime_lp requires finite p >= 1");
  double total = 0.0;
  double prev_t = 0.0;
  double prev_v = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Array th = sample(samples[i].second, oversample);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < th.size(); ++j) acc += std::pow(std::abs(phi_prime(th(j), p)), p_exp);
    const double v = acc * cell_area(th);
    if (i > 0) total += 0.5 * (samples[i].first - prev_t) * (v + prev_v);
    prev_t = samples[i].first;
    prev_v = v;
  }
  return total;
}

double orlicz_ratio(const ScalarField& v, double beta, int oversample) {
  const Array a = beta * sample(v, oversample).abs();
  const double top = a.maxCoeff();
  const double lse = top + std::log((a - top).exp().sum()) + std::log(cell_area(a));
  const double h1 = sobolev_norm(v, 1.0);
  return lse / (1.0 + h1 * h1);
}

double log_sobolev_ratio(const ScalarField& f, double s, int oversample) {
  if (!(s > 1.0)) throw PreconditionError("log_sobolev_ratio requires s > 1");
  const double sup = linf_norm(f, oversample);
  const double denom = (1.0 + sobolev_norm(f, 1.0)) * std::sqrt(std::log(std::numbers::e + sobolev_norm(f, s)));
  return sup / denom;
}

double separation(const ScalarField& theta, int oversample) { return 1.0 - linf_norm(theta, oversample); }

DiagnosticsRecord make_record(const SimState& s, const SchemeConfig& cfg, const DiagnosticsOptions& opt,
                              std::uint64_t clamp_events, double energy_residual) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.mass = mean(s.theta);
  r.E_kin = kinetic_energy(s.u);
  r.E_free = free_energy(s.theta, cfg, opt.energy_oversample);
  r.E_total = r.E_kin + r.E_free;
  r.dissipation = dissipation(s.theta, s.u, cfg);
  const Array th = sample(s.theta, opt.linf_oversample);
  r.theta_min = th.minCoeff();
  r.theta_max = th.maxCoeff();
  r.delta = 1.0 - std::max(std::abs(r.theta_min), std::abs(r.theta_max));
  const ScalarField mu = chemical_potential(s.theta, cfg);
  r.grad_mu_l2 = l2_norm(gradient(mu));
  const Array th_q = sample(s.theta, opt.energy_oversample);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < th_q.size(); ++j) acc += phi(th_q(j), cfg.potential);
  r.mean_phi = acc / static_cast<double>(th_q.size());
  r.sobolev_h1_theta = sobolev_norm(s.theta, 1.0);
  r.sobolev_h1_u = sobolev_norm(s.u, 1.0);
  r.d0eps_norm = d0_eps_norm(s.theta, cfg.epsilon, cfg.potential, opt.energy_oversample);
  r.clamp_events = clamp_events;
  r.energy_residual = energy_residual;
  return r;
}

}  // namespace nsch
