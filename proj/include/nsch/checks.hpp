#pragma once

// Property checks shared by the command-line `verify` / `oracle-check`
// commands and the acceptance binary. Each returns a measured value, the
// threshold it was held to and a one-line detail.

#include <cstdint>
#include <string>
#include <vector>

#include "nsch/config.hpp"

namespace nsch::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Transforms, derivatives, Delta, Delta^2, (-Delta)^{-1} and Leray against
/// the dense oracle on `fields` random N = n fields; value = worst abs error.
CheckResult spectral_oracle(int fields = 100, int n = 8, double tol = 1e-10, std::uint64_t seed = 7);

/// Coupled run of `steps` steps; value = max_n |m(theta^n) - m(theta^0)|.
CheckResult mass_conservation(int n = 64, double dt = 1e-4, std::int64_t steps = 10000, double linf = 0.9,
                              double tol = 1e-13);

struct EnergyStudy {
  double dt0 = 0.0;                    ///< largest swept dt with monotone energy at that and every smaller dt
  std::vector<double> swept_dt;
  std::vector<bool> monotone;
  std::vector<double> residual_dt;     ///< dt of each residual
  std::vector<double> residuals;       ///< energy-law residual at t = t_end
  std::vector<double> ratios;          ///< residual(dt/2) / residual(dt)
};
EnergyStudy energy_study(int n = 64, double t_end = 0.02, double base_dt = 1e-3, int halvings = 3);
CheckResult energy_law(const EnergyStudy& s, double lo = 0.4, double hi = 0.6);

/// value = min recorded delta; passes when every delta > 0 and no clamps occur.
CheckResult separation(int n = 128, double t_end = 1.0, double dt = 1e-3, double delta0 = 0.1);

/// value = worst envelope violation (<= 0 when passing).
CheckResult envelope(int n = 64, double eps = 1e-2, double t_end = 0.05, double dt = 1e-4, double slack = 1e-6);

struct EpsilonStudy {
  std::vector<double> eps;
  std::vector<double> errors;
  std::vector<double> ratios;  ///< e(eps/2) / e(eps)
};
EpsilonStudy epsilon_study(int n = 64, double t_end = 0.05, double dt = 1e-4, double eps0 = 1e-2, int halvings = 2);
CheckResult epsilon_convergence(const EpsilonStudy& s, double lo = 0.35, double hi = 0.65);

/// Single-mode exactness, composition, and T1 of the L^inf bound for a
/// delta0 datum; value = worst error, detail reports T1.
CheckResult biharmonic_semigroup_check(double tol = 1e-12, double delta0 = 0.1);

/// ||P(mu grad theta) - P(-div(grad theta (x) grad theta))||_{L^2} for a
/// random theta with modes <= N/4.
CheckResult korteweg_identity(int n = 128, int oversample = 4, double tol = 1e-8, const PotentialParams& p = {1.0, 2.0},
                              std::uint64_t seed = 11);

/// Assumption check, Young inequality and finite-difference derivatives.
CheckResult potential_suite(const PotentialParams& p, std::size_t assumption_samples = 1000000,
                            std::size_t young_pairs = 100000, double fd_tol = 1e-6);

/// Stationary residuals (<= tol) and first-order decay for forced runs.
CheckResult ode_identity(const PotentialParams& p = {1.0, 2.0}, double tol = 1e-12);

/// value = worst |int phi(theta) theta - int f theta| over `fields` fields.
CheckResult mean_phi_identity(const PotentialParams& p = {1.0, 2.0}, int fields = 20, double tol = 1e-9);

/// value = worst relative spread (max - min) / min of the maxima across grids.
CheckResult inequality_monitors(int fields = 1000, const std::vector<int>& grids = {32, 64, 128}, double tol = 0.2);

/// Two runs of the same config; passes when the CSV bytes agree.
CheckResult determinism(const RunConfig& cfg);
RunConfig determinism_config();

}  // namespace nsch::checks
