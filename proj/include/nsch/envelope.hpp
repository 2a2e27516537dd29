#pragma once

// Comparison envelopes for the eps-regularized Cahn-Hilliard equation.
//
// Written as a second-order problem, the regularized equation reads
//   eps theta_t - Delta theta + phi(theta) = h~,
//   h~ = m(phi(theta)) - (-Delta)^{-1} theta_t - (-Delta)^{-1} div(u theta),
// and theta is trapped between the solutions of the scalar ODEs
//   eps y' + phi(y) = h_+-,  y_+-(0) = +-||theta0||_inf,  h_+- = +-||h~||_inf.

#include <functional>
#include <vector>

#include "nsch/dynamics.hpp"

namespace nsch {

ScalarField compute_h_tilde(const SimState& state, const ScalarField& dtheta_dt, const PotentialParams& p,
                            ClampPolicy policy = ClampPolicy::clamp, ClampCounter* clamps = nullptr);

/// One backward-Euler step eps (y - y_prev)/dt + phi(y) = h, solved by
/// safeguarded Newton-bisection. Requires eps/dt > alpha.
double ode_step(double y_prev, double h, double eps, double dt, const PotentialParams& p);

/// Advances y over dt with constant forcing h, sub-stepping so eps/dt_sub > alpha.
double ode_advance(double y, double h, double eps, double dt, const PotentialParams& p);

struct EnvelopeSample {
  double t = 0.0;
  double h_plus = 0.0;
  double h_minus = 0.0;
  double y_minus = 0.0;
  double y_plus = 0.0;
};

class EnvelopeState {
 public:
  /// y_+-(0) = +-||theta0||_inf on the `oversample` grid.
  EnvelopeState(const ScalarField& theta0, double epsilon, int oversample = 1);

  double y_minus() const { return y_minus_; }
  double y_plus() const { return y_plus_; }
  double epsilon() const { return epsilon_; }
  int oversample() const { return oversample_; }
  const std::vector<EnvelopeSample>& history() const { return history_; }
  /// Trapezoidal \int_0^t |phi(y_+-)|^2 over the advance points.
  double phi_sq_integral_minus() const { return phi_sq_minus_; }
  double phi_sq_integral_plus() const { return phi_sq_plus_; }

  /// Integrates both ODEs to time t with forcing +-h_norm.
  void advance(double t, double h_norm, const PotentialParams& p);

 private:
  double y_minus_;
  double y_plus_;
  double epsilon_;
  int oversample_;
  double t_ = 0.0;
  double phi_sq_minus_ = 0.0;
  double phi_sq_plus_ = 0.0;
  std::vector<EnvelopeSample> history_;
};

struct EnvelopeReport {
  double theta_min = 0.0;
  double theta_max = 0.0;
  double y_minus = 0.0;
  double y_plus = 0.0;
  bool passed = true;
  double witness = 0.0;  ///< offending extreme value when failed
};

EnvelopeReport envelope_check(const ScalarField& theta, const EnvelopeState& env, double slack = 1e-6);

/// |eps Phi(y(T)) + \int |phi(y)|^2 - eps Phi(y(0)) - \int h phi(y)| with trapezoidal
/// quadrature over the sampled trajectory.
double ode_energy_identity_residual(const std::vector<double>& times, const std::vector<double>& y,
                                    const std::vector<double>& h, double eps, const PotentialParams& p);

}  // namespace nsch
