#include "nsch/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsch/errors.hpp"

namespace nsch {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// (1+s) ln(1+s) + (1-s) ln(1-s) with 0 ln 0 = 0.
double entropy(double s) {
  const double a = 1.0 + s;
  const double b = 1.0 - s;
  const double ta = a > 0.0 ? a * std::log1p(s) : 0.0;
  const double tb = b > 0.0 ? b * std::log1p(-s) : 0.0;
  return ta + tb;
}

double strict_argument(double s, const PotentialParams& p, ClampCounter* clamps) {
  if (!std::isfinite(s)) throw DomainError("potential evaluated at non-finite argument");
  if (std::abs(s) >= 1.0) throw SingularityError("potential derivative is singular at s = " + fmt(s));
  const double limit = 1.0 - p.clamp_margin();
  if (std::abs(s) > limit) {
    if (clamps) ++clamps->events;
    return std::copysign(limit, s);
  }
  return s;
}

}  // namespace

PotentialParams::PotentialParams(double alpha0, double alpha, double clamp_margin)
    : alpha0_(alpha0), alpha_(alpha), clamp_margin_(clamp_margin) {
  if (!(alpha0 > 0.0) || !(alpha > alpha0)) {
    throw ConfigError("potential requires 0 < alpha0 < alpha, got alpha0 = " + fmt(alpha0) +
                      ", alpha = " + fmt(alpha));
  }
  if (!(clamp_margin > 0.0) || !(clamp_margin < 1e-3)) {
    throw ConfigError("clamp_margin must lie in (0, 1e-3), got " + fmt(clamp_margin));
  }
}

double PotentialParams::growth_c1() const { return std::exp(2.0 * alpha_ / alpha0_ + std::log(alpha0_)); }

double Phi(double s, const PotentialParams& p) {
  if (!std::isfinite(s) || std::abs(s) > 1.0) throw DomainError("Phi is +infinity outside [-1, 1], s = " + fmt(s));
  return 0.5 * p.alpha0() * entropy(s) - 0.5 * p.alpha() * s * s;
}

double phi(double s, const PotentialParams& p, ClampCounter* clamps) {
  s = strict_argument(s, p, clamps);
  return p.alpha0() * std::atanh(s) - p.alpha() * s;
}

double phi_prime(double s, const PotentialParams& p, ClampCounter* clamps) {
  s = strict_argument(s, p, clamps);
  return p.alpha0() / ((1.0 - s) * (1.0 + s)) - p.alpha();
}

double phi_tilde(double s, const PotentialParams& p, ClampCounter* clamps) {
  s = strict_argument(s, p, clamps);
  return p.alpha0() * std::atanh(s);
}

double Phi_tilde(double s, const PotentialParams& p, ClampCounter* clamps) {
  s = strict_argument(s, p, clamps);
  return 0.5 * p.alpha0() * entropy(s);
}

double clamp_argument(double s, const PotentialParams& p, ClampPolicy policy, ClampCounter* clamps) {
  if (policy == ClampPolicy::strict) return strict_argument(s, p, clamps);
  if (!std::isfinite(s)) throw DomainError("potential evaluated at non-finite argument");
  const double limit = 1.0 - p.clamp_margin();
  if (std::abs(s) > limit) {
    if (clamps) ++clamps->events;
    return std::copysign(limit, s);
  }
  return s;
}

double young_A(double s) {
  if (!(s >= 0.0)) throw DomainError("young_A requires s >= 0");
  return std::expm1(s) - s;
}

double young_A_tilde(double s) {
  if (!(s >= 0.0)) throw DomainError("young_A_tilde requires s >= 0");
  return (1.0 + s) * std::log1p(s) - s;
}

AssumptionReport assumption_check(const PotentialParams& p, std::size_t n_samples) {
  AssumptionReport r;
  r.worst_growth_margin = INFINITY;
  r.worst_lower_margin = INFINITY;
  const double log_c1 = 2.0 * p.alpha() / p.alpha0() + std::log(p.alpha0());
  const std::size_t half = n_samples / 2;
  auto visit = [&](double s) {
    ++r.samples;
    const double f = p.alpha0() * std::atanh(s) - p.alpha() * s;
    const double d = p.alpha0() / ((1.0 - s) * (1.0 + s)) - p.alpha();
    const double rhs = std::exp(p.growth_c2() * std::abs(f) + log_c1) + p.growth_c3();
    const double growth = (rhs - std::abs(d)) / rhs;
    const double lower = d + p.alpha();
    if (growth < r.worst_growth_margin) {
      r.worst_growth_margin = growth;
      r.worst_growth_witness = s;
    }
    if (lower < r.worst_lower_margin) {
      r.worst_lower_margin = lower;
      r.worst_lower_witness = s;
    }
    if ((growth < 0.0 || !(lower > 0.0)) && r.passed) {
      r.passed = false;
      r.failure_witness = s;
    }
  };
  // uniform interior points, endpoints excluded
  for (std::size_t i = 0; i < n_samples - half; ++i) {
    const double s = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n_samples - half);
    visit(s);
  }
  // distance to the boundary 10^{-9u}, u in [0, 1], alternating sides
  for (std::size_t i = 0; i < half; ++i) {
    const double u = half > 1 ? static_cast<double>(i) / static_cast<double>(half - 1) : 1.0;
    const double d = std::pow(10.0, -9.0 * u);
    visit((i % 2 == 0 ? 1.0 : -1.0) * (1.0 - d));
  }
  return r;
}

}  // namespace nsch
