#pragma once

// Logarithmic (Flory-Huggins) free-energy density on [-1, 1]
//
//   Phi(s) = alpha0/2 [(1+s) ln(1+s) + (1-s) ln(1-s)] - alpha/2 s^2,
//
// its derivatives, the monotone shifts used by the comparison argument, and
// the Young pair A(s) = e^s - s - 1, A~(s) = (1+s) ln(1+s) - s.

#include <cstddef>
#include <cstdint>

namespace nsch {

/// Tally of evaluations that were pulled back from within `clamp_margin` of +-1.
struct ClampCounter {
  std::uint64_t events = 0;
};

class PotentialParams {
 public:
  /// Requires 0 < alpha0 < alpha and clamp_margin in (0, 1e-3).
  PotentialParams(double alpha0, double alpha, double clamp_margin = 1e-12);

  double alpha0() const { return alpha0_; }
  double alpha() const { return alpha_; }
  double clamp_margin() const { return clamp_margin_; }

  // Explicit witnesses for the growth bound |phi'| <= C1 e^{C2 |phi|} + C3.
  double growth_c1() const;
  double growth_c2() const { return 2.0 / alpha0_; }
  double growth_c3() const { return alpha_; }

 private:
  double alpha0_;
  double alpha_;
  double clamp_margin_;
};

/// Phi(s) for |s| <= 1 with 0 ln 0 = 0; DomainError for |s| > 1.
double Phi(double s, const PotentialParams& p);

/// phi = Phi'. Throws SingularityError for |s| >= 1; arguments within
/// clamp_margin of +-1 are pulled inward and counted.
double phi(double s, const PotentialParams& p, ClampCounter* clamps = nullptr);
double phi_prime(double s, const PotentialParams& p, ClampCounter* clamps = nullptr);

/// phi~(s) = phi(s) - phi(0) + alpha s, strictly increasing.
double phi_tilde(double s, const PotentialParams& p, ClampCounter* clamps = nullptr);
/// Phi~(s) = integral_0^s phi~, nonnegative, vanishing only at 0.
double Phi_tilde(double s, const PotentialParams& p, ClampCounter* clamps = nullptr);

/// Field evaluation policy: with clamping on, any |s| > 1 - margin (including
/// collocation overshoot past +-1) is clamped and counted instead of throwing.
enum class ClampPolicy { clamp, strict };

/// Maps s to the evaluation point used under `policy`; counts clamps.
double clamp_argument(double s, const PotentialParams& p, ClampPolicy policy, ClampCounter* clamps);

double young_A(double s);
double young_A_tilde(double s);

struct AssumptionReport {
  bool passed = true;
  std::size_t samples = 0;
  /// min over samples of RHS - |phi'| in the growth bound, relative to RHS.
  double worst_growth_margin = 0.0;
  double worst_growth_witness = 0.0;
  /// min over samples of phi'(s) + alpha (equals alpha0 / (1 - s^2)).
  double worst_lower_margin = 0.0;
  double worst_lower_witness = 0.0;
  double failure_witness = 0.0;
};

/// Checks phi' >= -alpha and |phi'| <= C1 e^{C2|phi|} + C3 on `n_samples`
/// points, half uniform on (-1, 1) and half log-refined toward +-1 down to
/// 1 - |s| = 1e-9.
AssumptionReport assumption_check(const PotentialParams& p, std::size_t n_samples);

}  // namespace nsch
