#include "nsch/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace nsch {

namespace {

using Array = GridArray<double>;

struct PhysicalState {
  Array theta;
  Array u1;
  Array u2;
  bool has_velocity = false;
};

PhysicalState to_physical(const SimState& s) {
  PhysicalState p;
  p.theta = inverse_transform(s.theta);
  p.has_velocity = !(s.u.u1.coeffs().isZero(0.0) && s.u.u2.coeffs().isZero(0.0));
  if (p.has_velocity) {
    p.u1 = inverse_transform(s.u.u1);
    p.u2 = inverse_transform(s.u.u2);
  }
  return p;
}

ScalarField masked(const Grid& g, const Array& values) { return dealias(forward_transform(g, values)); }

Array phi_values(const Array& theta, const PotentialParams& p, ClampPolicy policy, ClampCounter* clamps) {
  Array out(theta.rows(), theta.cols());
  const double a0 = p.alpha0();
  const double a = p.alpha();
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double s = clamp_argument(theta(j), p, policy, clamps);
    out(j) = a0 * std::atanh(s) - a * s;
  }
  return out;
}

void count_overshoot(const Array& theta, StepEvents* events) {
  if (!events) return;
  events->linf_violations += static_cast<std::uint64_t>((theta.abs() > 1.0).count());
}

ScalarField mu_from_phi(const ScalarField& theta, const ScalarField& phi_d, const SchemeConfig& cfg) {
  return (1.0 / cfg.kappa) * phi_d - cfg.kappa * laplacian(theta);
}

ScalarField ch_update(const SimState& s, const SchemeConfig& cfg, const PhysicalState& phys,
                      const ScalarField& phi_d) {
  const Grid& g = s.grid();
  const int n = g.size();
  const double dt = cfg.dt;
  const double eps = cfg.epsilon;
  const double m = cfg.mobility;
  const double S = cfg.stabilization();

  std::optional<ScalarField> transport;
  if (phys.has_velocity) {
    transport = derivative(masked(g, phys.u1 * phys.theta), 0) + derivative(masked(g, phys.u2 * phys.theta), 1);
  }

  ScalarField next(g);
  const auto& th = s.theta.coeffs();
  const auto& ph = phi_d.coeffs();
  auto& out = next.coeffs();
  for (int i2 = 0; i2 < n; ++i2) {
    const int k2 = g.wavenumber(i2);
    for (int i1 = 0; i1 < n; ++i1) {
      const int k1 = g.wavenumber(i1);
      const double kk = double(k1 * k1 + k2 * k2);
      const double den = 1.0 + eps * kk + dt * m * (cfg.kappa * kk * kk + S * kk);
      std::complex<double> num = (1.0 + eps * kk) * th(i1, i2) + dt * m * (-kk * ph(i1, i2) / cfg.kappa + S * kk * th(i1, i2));
      if (transport) num -= dt * transport->coeffs()(i1, i2);
      out(i1, i2) = num / den;
    }
  }
  out(0, 0) = th(0, 0);
  if (cfg.galerkin_n) next = galerkin_cutoff(next, *cfg.galerkin_n);
  return next;
}

VectorField ns_update(const SimState& s, const SchemeConfig& cfg, const ScalarField& mu, const PhysicalState& phys,
                      StepEvents* events) {
  const Grid& g = s.grid();
  const int n = g.size();
  const double dt = cfg.dt;
  const double nu_min = cfg.viscosity.nu_min();

  ScalarField f1(g), f2(g);
  if (phys.has_velocity) {
    const double umax = std::max(phys.u1.abs().maxCoeff(), phys.u2.abs().maxCoeff());
    if (events && dt * umax * n > 1.0) ++events->cfl_warnings;

    const Array d1u1 = inverse_transform(derivative(s.u.u1, 0));
    const Array d2u1 = inverse_transform(derivative(s.u.u1, 1));
    const Array d1u2 = inverse_transform(derivative(s.u.u2, 0));
    const Array d2u2 = inverse_transform(derivative(s.u.u2, 1));
    f1 -= masked(g, phys.u1 * d1u1 + phys.u2 * d2u1);
    f2 -= masked(g, phys.u1 * d1u2 + phys.u2 * d2u2);

    if (!cfg.viscosity.is_constant()) {
      Array w(phys.theta.rows(), phys.theta.cols());
      for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = cfg.viscosity(phys.theta(j)) - nu_min;
      const ScalarField t11 = masked(g, 2.0 * w * d1u1);
      const ScalarField t12 = masked(g, w * (d2u1 + d1u2));
      const ScalarField t22 = masked(g, 2.0 * w * d2u2);
      f1 += derivative(t11, 0) + derivative(t12, 1);
      f2 += derivative(t12, 0) + derivative(t22, 1);
    }
  }
  if (cfg.korteweg_force) {
    const Array mu_p = inverse_transform(mu);
    f1 += masked(g, mu_p * inverse_transform(derivative(s.theta, 0)));
    f2 += masked(g, mu_p * inverse_transform(derivative(s.theta, 1)));
  }

  VectorField force = leray_project(VectorField(std::move(f1), std::move(f2)));
  force.u1.coeffs()(0, 0) = 0.0;
  force.u2.coeffs()(0, 0) = 0.0;

  VectorField next(g);
  for (int axis = 0; axis < 2; ++axis) {
    const auto& u = s.u[axis].coeffs();
    const auto& f = force[axis].coeffs();
    auto& out = next[axis].coeffs();
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = g.wavenumber(i2);
      for (int i1 = 0; i1 < n; ++i1) {
        const int k1 = g.wavenumber(i1);
        const double kk = double(k1 * k1 + k2 * k2);
        out(i1, i2) = (u(i1, i2) + dt * f(i1, i2)) / (1.0 + dt * nu_min * kk);
      }
    }
    out(0, 0) = u(0, 0);
  }
  next = leray_project(next);
  if (cfg.galerkin_n) next = galerkin_cutoff(next, *cfg.galerkin_n);
  return next;
}

}  // namespace

void ViscosityModel::validate() const {
  if (!(nu_a > 0.0)) throw ConfigError("viscosity nu_a must be positive");
  if (kind == Kind::constant && nu_b != 0.0) throw ConfigError("constant viscosity takes no slope nu_b");
  if (!(nu_min() > 0.0)) throw ConfigError("viscosity must stay positive on [-1, 1]: need nu_a - |nu_b| > 0");
}

std::vector<std::string> SchemeConfig::validate() const {
  std::vector<std::string> warnings;
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("scheme.dt must be positive");
  if (S && !(*S >= 0.0)) throw ConfigError("scheme.S must be nonnegative");
  if (!(epsilon >= 0.0)) throw ConfigError("scheme.epsilon must be nonnegative");
  if (galerkin_n && *galerkin_n <= 0) throw ConfigError("scheme.galerkin_n must be positive");
  if (!(kappa > 0.0)) throw ConfigError("scheme.kappa must be positive");
  if (!(mobility > 0.0)) throw ConfigError("scheme.mobility must be positive");
  viscosity.validate();
  if (stabilization() < potential.alpha()) {
    std::ostringstream os;
    os << "stabilization S = " << stabilization() << " is below alpha = " << potential.alpha()
       << "; the explicit concave part may not be damped";
    warnings.push_back(os.str());
  }
  return warnings;
}

ScalarField phi_field(const ScalarField& theta, const PotentialParams& p, ClampPolicy policy, ClampCounter* clamps,
                      int factor) {
  const Array values = sample(theta, factor);
  return project_samples(theta.grid(), phi_values(values, p, policy, clamps));
}

ScalarField chemical_potential(const ScalarField& theta, const SchemeConfig& cfg, ClampCounter* clamps) {
  const ScalarField phi_d = dealias(phi_field(theta, cfg.potential, cfg.clamp, clamps));
  return mu_from_phi(theta, phi_d, cfg);
}

VectorField korteweg_force(const ScalarField& theta, const ScalarField& mu) {
  require_same_grid(theta.grid(), mu.grid());
  return leray_project(VectorField(dealias_product(mu, derivative(theta, 0)), dealias_product(mu, derivative(theta, 1))));
}

VectorField korteweg_force_oversampled(const ScalarField& theta, const SchemeConfig& cfg, int factor) {
  const Grid& g = theta.grid();
  const Array th = sample(theta, factor);
  const Array mu = (1.0 / cfg.kappa) * phi_values(th, cfg.potential, cfg.clamp, nullptr) -
                   cfg.kappa * sample(laplacian(theta), factor);
  const VectorField f(project_samples(g, Array(mu * sample(derivative(theta, 0), factor))),
                      project_samples(g, Array(mu * sample(derivative(theta, 1), factor))));
  return leray_project(strip_nyquist(f));
}

VectorField korteweg_stress_force(const ScalarField& theta, double kappa, int factor) {
  const ScalarField d1 = derivative(theta, 0);
  const ScalarField d2 = derivative(theta, 1);
  const ScalarField s11 = oversampled_product(d1, d1, factor);
  const ScalarField s12 = oversampled_product(d1, d2, factor);
  const ScalarField s22 = oversampled_product(d2, d2, factor);
  ScalarField f1 = -kappa * (derivative(s11, 0) + derivative(s12, 1));
  ScalarField f2 = -kappa * (derivative(s12, 0) + derivative(s22, 1));
  return leray_project(strip_nyquist(VectorField(std::move(f1), std::move(f2))));
}

ScalarField ch_step(const SimState& state, const SchemeConfig& cfg, StepEvents* events) {
  const PhysicalState phys = to_physical(state);
  count_overshoot(phys.theta, events);
  const ScalarField phi_d =
      dealias(forward_transform(state.grid(), phi_values(phys.theta, cfg.potential, cfg.clamp, events ? &events->clamps : nullptr)));
  return ch_update(state, cfg, phys, phi_d);
}

VectorField ns_step(const SimState& state, const SchemeConfig& cfg, const ScalarField& mu, StepEvents* events) {
  return ns_update(state, cfg, mu, to_physical(state), events);
}

SimState coupled_step(const SimState& state, const SchemeConfig& cfg, StepEvents* events) {
  const PhysicalState phys = to_physical(state);
  count_overshoot(phys.theta, events);
  const ScalarField phi_d =
      dealias(forward_transform(state.grid(), phi_values(phys.theta, cfg.potential, cfg.clamp, events ? &events->clamps : nullptr)));

  SimState next(state.grid());
  next.theta = ch_update(state, cfg, phys, phi_d);
  if (cfg.korteweg_force || phys.has_velocity) {
    next.u = ns_update(state, cfg, mu_from_phi(state.theta, phi_d, cfg), phys, events);
  }
  next.prev_theta = state.theta;
  next.t = state.t + cfg.dt;
  next.step = state.step + 1;
  return next;
}

}  // namespace nsch
