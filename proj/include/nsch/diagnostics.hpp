#pragma once

// Scalar observables of a simulation state and the empirical monitors for
// inequalities whose constants are not known in closed form.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsch/dynamics.hpp"

namespace nsch {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double E_kin = 0.0;
  double E_free = 0.0;
  double E_total = 0.0;
  double dissipation = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  double delta = 1.0;
  double grad_mu_l2 = 0.0;
  double mean_phi = 0.0;
  double sobolev_h1_theta = 0.0;
  double sobolev_h1_u = 0.0;
  double d0eps_norm = 0.0;
  std::uint64_t clamp_events = 0;
  double energy_residual = 0.0;
};

/// Field names in CSV column order.
const std::vector<std::string>& record_field_names();

struct DiagnosticsOptions {
  int energy_oversample = 4;  ///< quadrature grid factor for Phi, phi, phi'
  int linf_oversample = 2;    ///< grid factor for min/max of theta
};

/// (kappa/2) ||grad theta||^2 + (1/kappa) \int Phi(theta), Phi integral on the oversampled grid.
double free_energy(const ScalarField& theta, const SchemeConfig& cfg, int oversample = 4);

double kinetic_energy(const VectorField& u);

/// m ||grad mu||^2 + \int 2 nu(theta) |Du|^2.
double dissipation(const ScalarField& theta, const VectorField& u, const SchemeConfig& cfg);

double total_energy(const SimState& s, const SchemeConfig& cfg, int oversample = 4);

/// |(E(n+1) - E(n))/dt + D(n+1)| for consecutive states.
double energy_law_residual(const SimState& before, const SimState& after, const SchemeConfig& cfg,
                           int oversample = 4);

/// Composite norm ||f||_{H^2}^2 + ||phi(f)||^2 + eps ||w||^2 + ||w||_{Hdot^-1}^2 (square-rooted),
/// w = (eps + (-Delta)^{-1})^{-1} [Delta f - phi(f) + m(phi(f))].
struct D0EpsTerms {
  double h2_sq = 0.0;
  double phi_l2_sq = 0.0;
  double eps_w_l2_sq = 0.0;
  double w_hm1_sq = 0.0;
  double norm() const;
};
D0EpsTerms d0_eps_terms(const ScalarField& theta, double eps, const PotentialParams& p, int oversample = 4);
double d0_eps_norm(const ScalarField& theta, double eps, const PotentialParams& p, int oversample = 4);

struct MeanPhiReport {
  double mean_phi = 0.0;          ///< m(phi(theta))
  double f_l1 = 0.0;              ///< ||phi(theta) - m(phi(theta))||_{L^1}
  double lhs = 0.0;               ///< \int phi(theta) theta
  double rhs = 0.0;               ///< \int f theta
  double identity_residual = 0.0; ///< |lhs - rhs|
  double ratio = 0.0;             ///< |m(phi)| / (||f||_1 + 1)
};
MeanPhiReport mean_phi_check(const ScalarField& theta, const PotentialParams& p, int oversample = 4);

/// Trapezoid-in-time, collocation-in-space \int_0^T \int |phi'(theta)|^p.
double phi_prime_lp(const std::vector<std::pair<double, ScalarField>>& samples, double p_exp,
                    const PotentialParams& p, int oversample = 1);

/// log(\int e^{beta |v|}) / (1 + ||v||_{H^1}^2), log-sum-exp evaluated.
double orlicz_ratio(const ScalarField& v, double beta, int oversample = 2);

/// ||f||_inf / ((1 + ||f||_{H^1}) log^{1/2}(e + ||f||_{H^s})), s > 1.
double log_sobolev_ratio(const ScalarField& f, double s, int oversample = 2);

/// Separation distance 1 - ||theta||_inf on the oversampled grid.
double separation(const ScalarField& theta, int oversample = 2);

DiagnosticsRecord make_record(const SimState& s, const SchemeConfig& cfg, const DiagnosticsOptions& opt,
                              std::uint64_t clamp_events, double energy_residual);

}  // namespace nsch
