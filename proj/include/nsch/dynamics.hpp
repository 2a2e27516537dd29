#pragma once

// Stabilized semi-implicit pseudo-spectral stepping of the coupled
// Navier-Stokes / Cahn-Hilliard system on the torus:
//
//   u_t + u.grad u - div(2 nu(theta) Du) + grad g = mu grad theta,  div u = 0,
//   theta_t - eps Delta theta_t + u.grad theta = m Delta mu,
//   mu = phi(theta)/kappa - kappa Delta theta.
//
// Every implicit operator is a Fourier multiplier; the pressure is removed
// by the Leray projection and never reconstructed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsch/potential.hpp"
#include "nsch/spectral.hpp"

namespace nsch {

/// nu(s) = nu_a + nu_b s (constant when nu_b = 0).
struct ViscosityModel {
  enum class Kind { constant, affine };

  Kind kind = Kind::constant;
  double nu_a = 1.0;
  double nu_b = 0.0;

  static ViscosityModel constant(double nu) { return {Kind::constant, nu, 0.0}; }
  static ViscosityModel affine(double a, double b) { return {Kind::affine, a, b}; }

  double operator()(double s) const { return kind == Kind::constant ? nu_a : nu_a + nu_b * s; }
  /// Lower bound of nu on [-1, 1].
  double nu_min() const { return kind == Kind::constant ? nu_a : nu_a - std::abs(nu_b); }
  bool is_constant() const { return kind == Kind::constant || nu_b == 0.0; }
  void validate() const;
};

struct SchemeConfig {
  explicit SchemeConfig(PotentialParams p) : potential(p) {}

  double dt = 1e-4;
  std::optional<double> S;  ///< stabilization; defaults to 2 alpha
  double epsilon = 0.0;     ///< 0 selects the fourth-order equation
  std::optional<int> galerkin_n;
  double kappa = 1.0;
  double mobility = 1.0;
  ViscosityModel viscosity;
  PotentialParams potential;
  bool korteweg_force = true;  ///< off decouples theta from u (pure CH when u0 = 0)
  ClampPolicy clamp = ClampPolicy::clamp;

  double stabilization() const { return S.value_or(2.0 * potential.alpha()); }

  /// Throws ConfigError on invalid values; returns non-fatal warnings.
  std::vector<std::string> validate() const;
};

struct SimState {
  explicit SimState(const Grid& grid) : theta(grid), u(grid), prev_theta(grid) {}
  SimState(ScalarField theta0, VectorField u0)
      : theta(std::move(theta0)), u(std::move(u0)), prev_theta(theta) {}

  double t = 0.0;
  std::int64_t step = 0;
  ScalarField theta;
  VectorField u;
  ScalarField prev_theta;

  const Grid& grid() const { return theta.grid(); }
};

/// Aggregated, order-independent event tallies of a stepping sequence.
struct StepEvents {
  ClampCounter clamps;
  std::uint64_t cfl_warnings = 0;
  std::uint64_t linf_violations = 0;  ///< collocation samples with |theta| > 1
};

/// phi(theta) evaluated on the (factor*N)^2 grid and brought back to the N
/// grid (factor 1: collocation values, no mask).
ScalarField phi_field(const ScalarField& theta, const PotentialParams& p, ClampPolicy policy,
                      ClampCounter* clamps, int factor = 1);

/// mu = dealias(phi(theta))/kappa - kappa Delta theta.
ScalarField chemical_potential(const ScalarField& theta, const SchemeConfig& cfg, ClampCounter* clamps = nullptr);

/// P(mu grad theta) with 2/3-dealiased products.
VectorField korteweg_force(const ScalarField& theta, const ScalarField& mu);

/// P(mu grad theta) with mu evaluated pointwise on a factor-times oversampled grid.
VectorField korteweg_force_oversampled(const ScalarField& theta, const SchemeConfig& cfg, int factor);

/// P(-kappa div(grad theta (x) grad theta)) on a factor-times oversampled grid.
VectorField korteweg_stress_force(const ScalarField& theta, double kappa, int factor);

/// theta^{n+1} from one stabilized IMEX step of the (optionally eps-regularized) CH equation.
ScalarField ch_step(const SimState& state, const SchemeConfig& cfg, StepEvents* events = nullptr);

/// u^{n+1} from one semi-implicit NS step driven by theta^n and mu^n.
VectorField ns_step(const SimState& state, const SchemeConfig& cfg, const ScalarField& mu, StepEvents* events = nullptr);

/// ch_step then ns_step with lagged coupling; advances t and rotates prev_theta.
SimState coupled_step(const SimState& state, const SchemeConfig& cfg, StepEvents* events = nullptr);

}  // namespace nsch
