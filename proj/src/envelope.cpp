#include "nsch/envelope.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nsch {

namespace {

constexpr double kEdge = 1e-15;

double phi_raw(double y, const PotentialParams& p) { return p.alpha0() * std::atanh(y) - p.alpha() * y; }
double phi_prime_raw(double y, const PotentialParams& p) { return p.alpha0() / ((1.0 - y) * (1.0 + y)) - p.alpha(); }

}  // namespace

ScalarField compute_h_tilde(const SimState& state, const ScalarField& dtheta_dt, const PotentialParams& p,
                            ClampPolicy policy, ClampCounter* clamps) {
  const ScalarField& theta = state.theta;
  ScalarField transport = divergence(VectorField(dealias_product(state.u.u1, theta), dealias_product(state.u.u2, theta)));
  const double m_dt = mean(dtheta_dt);
  const double m_tr = mean(transport);
  if (std::abs(m_dt) > 1e-10 * (1.0 + l2_norm(dtheta_dt)) || std::abs(m_tr) > 1e-10 * (1.0 + l2_norm(transport))) {
    std::ostringstream os;
    os.precision(17);
    os << "h~ needs mean-zero theta_t and transport; got means " << m_dt << " and " << m_tr;
    throw PreconditionError(os.str());
  }
  const ScalarField phi_f = phi_field(theta, p, policy, clamps);
  ScalarField h = -(inverse_laplacian(dtheta_dt) + inverse_laplacian(transport));
  h.coeffs()(0, 0) = mean(phi_f);
  return h;
}

double ode_step(double y_prev, double h, double eps, double dt, const PotentialParams& p) {
  if (!(std::abs(y_prev) < 1.0)) throw PreconditionError("ode_step requires |y| < 1");
  if (!(eps > 0.0) || !(dt > 0.0)) throw PreconditionError("ode_step requires eps > 0 and dt > 0");
  const double c = eps / dt;
  if (!(c > p.alpha())) throw PreconditionError("ode_step requires eps/dt > alpha for a monotone step map");

  auto F = [&](double y) { return c * (y - y_prev) + phi_raw(y, p) - h; };
  double lo = -1.0 + kEdge;
  double hi = 1.0 - kEdge;
  const double f_lo = F(lo);
  const double f_hi = F(hi);
  if (f_lo > 0.0 || f_hi < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "no root in (-1, 1) for forcing h = " << h << " at eps/dt = " << c;
    throw SingularityError(os.str());
  }
  double y = y_prev;
  for (int it = 0; it < 400; ++it) {
    const double f = F(y);
    if (std::abs(f) <= 1e-12 * std::max(1.0, std::abs(h))) return y;
    if (f > 0.0) hi = y; else lo = y;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) return y;
    double next = y - f / (c + phi_prime_raw(y, p));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    y = next;
  }
  return y;
}

double ode_advance(double y, double h, double eps, double dt, const PotentialParams& p) {
  int sub = 1;
  while (!(eps / (dt / sub) > p.alpha())) sub *= 2;
  const double ds = dt / sub;
  for (int i = 0; i < sub; ++i) y = ode_step(y, h, eps, ds, p);
  return y;
}

EnvelopeState::EnvelopeState(const ScalarField& theta0, double epsilon, int oversample)
    : epsilon_(epsilon), oversample_(oversample) {
  if (!(epsilon > 0.0)) throw PreconditionError("envelope ODE needs eps > 0");
  const double sup = linf_norm(theta0, oversample);
  if (!(sup < 1.0)) throw PreconditionError("envelope needs ||theta0||_inf < 1");
  y_plus_ = sup;
  y_minus_ = -sup;
  history_.push_back({0.0, 0.0, 0.0, y_minus_, y_plus_});
}

void EnvelopeState::advance(double t, double h_norm, const PotentialParams& p) {
  const double dt = t - t_;
  if (!(dt > 0.0)) throw PreconditionError("envelope time must increase");
  const double a_plus = phi_raw(y_plus_, p);
  const double a_minus = phi_raw(y_minus_, p);
  y_plus_ = ode_advance(y_plus_, h_norm, epsilon_, dt, p);
  y_minus_ = ode_advance(y_minus_, -h_norm, epsilon_, dt, p);
  const double b_plus = phi_raw(y_plus_, p);
  const double b_minus = phi_raw(y_minus_, p);
  phi_sq_plus_ += 0.5 * dt * (a_plus * a_plus + b_plus * b_plus);
  phi_sq_minus_ += 0.5 * dt * (a_minus * a_minus + b_minus * b_minus);
  t_ = t;
  history_.push_back({t, h_norm, -h_norm, y_minus_, y_plus_});
}

EnvelopeReport envelope_check(const ScalarField& theta, const EnvelopeState& env, double slack) {
  const GridArray<double> v = sample(theta, env.oversample());
  EnvelopeReport r;
  r.theta_min = v.minCoeff();
  r.theta_max = v.maxCoeff();
  r.y_minus = env.y_minus();
  r.y_plus = env.y_plus();
  if (r.theta_max > r.y_plus + slack) {
    r.passed = false;
    r.witness = r.theta_max;
  } else if (r.theta_min < r.y_minus - slack) {
    r.passed = false;
    r.witness = r.theta_min;
  }
  return r;
}

double ode_energy_identity_residual(const std::vector<double>& times, const std::vector<double>& y,
                                    const std::vector<double>& h, double eps, const PotentialParams& p) {
  if (times.size() != y.size() || times.size() != h.size() || times.empty()) {
    throw PreconditionError("trajectory, forcing and times must have equal nonzero length");
  }
  double dissip = 0.0;
  double work = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    const double a = phi_raw(y[i - 1], p);
    const double b = phi_raw(y[i], p);
    dissip += 0.5 * dt * (a * a + b * b);
    work += 0.5 * dt * (h[i - 1] * a + h[i] * b);
  }
  return std::abs(eps * Phi(y.back(), p) + dissip - eps * Phi(y.front(), p) - work);
}

}  // namespace nsch
