// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "nsch/checks.hpp"

using nsch::checks::CheckResult;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::function<CheckResult()> run;
};

std::vector<Criterion> criteria() {
  using namespace nsch::checks;
  return {
      {1, "spectral oracle equivalence (100 fields, N=8, tol 1e-10)", [] { return spectral_oracle(100, 8, 1e-10); }},
      {2, "mass conservation (1e4 steps, N=64, dt=1e-4, tol 1e-13)",
       [] { return mass_conservation(64, 1e-4, 10000, 0.9, 1e-13); }},
      {3, "discrete energy law (monotone below dt0, residual ratios in [0.4, 0.6])",
       [] { return energy_law(energy_study(64, 0.02, 1e-3, 3), 0.4, 0.6); }},
      {4, "separation (T=1, N=128, delta0=0.1, no clamps)", [] { return separation(128, 1.0, 1e-3, 0.1); }},
      {5, "comparison envelope (eps=1e-2, slack 1e-6)", [] { return envelope(64, 1e-2, 0.05, 1e-4, 1e-6); }},
      {6, "eps convergence (ratios in [0.35, 0.65])",
       [] { return epsilon_convergence(epsilon_study(64, 0.05, 1e-4, 1e-2, 2), 0.35, 0.65); }},
      {7, "bi-harmonic semigroup (tol 1e-12, T1 > 0)", [] { return biharmonic_semigroup_check(1e-12, 0.1); }},
      {8, "Korteweg identity (N=128, 4x oversampling, tol 1e-8)",
       [] { return korteweg_identity(128, 4, 1e-8, nsch::PotentialParams(1.0, 2.0)); }},
      {9, "potential property suite (1e6 / 1e5 samples, fd 1e-6)",
       [] { return potential_suite(nsch::PotentialParams(1.0, 2.0), 1000000, 100000, 1e-6); }},
      {10, "ODE energy identity (stationary 1e-12, first order forced)",
       [] { return ode_identity(nsch::PotentialParams(1.0, 2.0), 1e-12); }},
      {11, "mean-of-phi identity (20 fields, tol 1e-9)",
       [] { return mean_phi_identity(nsch::PotentialParams(1.0, 2.0), 20, 1e-9); }},
      {12, "inequality monitors (1e3 fields, spread < 20% over N=32,64,128)",
       [] { return inequality_monitors(1000, {32, 64, 128}, 0.2); }},
      {13, "determinism (bit-identical CSV)", [] { return determinism(determinism_config()); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  int ran = 0;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s: value=%.3e threshold=%.3e (%.1fs) %s\n", r.passed ? "PASS" : "FAIL", c.id, c.title,
                r.value, r.threshold, secs, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
