#include "nsch/checks.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "nsch/io.hpp"
#include "oracle/dense_oracle.hpp"

namespace nsch::checks {

namespace {

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt("%.4g", x);
  return "[" + s + "]";
}

double max_abs(const GridArray<double>& a, const GridArray<double>& b) { return (a - b).abs().maxCoeff(); }

SchemeConfig default_scheme(double dt) {
  SchemeConfig cfg(PotentialParams(1.0, 2.0));
  cfg.dt = dt;
  return cfg;
}

SimState random_state(int n, std::uint64_t seed, int band, double linf, double u_amp) {
  const Grid g(n);
  return SimState(random_band(g, seed, band, linf), initial_velocity(g, VelocityKind::random_band, u_amp, seed, 3));
}

RunOptions quiet_options(double t_end, std::int64_t sample_every, double delta0 = 0.05) {
  RunOptions o;
  o.t_end = t_end;
  o.sample_every = sample_every;
  o.delta0 = delta0;
  o.energy_residual = false;
  return o;
}

class MassTracker : public RunObserver {
 public:
  explicit MassTracker(double m0) : m0_(m0) {}
  void on_step(const SimState&, const SimState& after) override {
    worst = std::max(worst, std::abs(mean(after.theta) - m0_));
  }
  double worst = 0.0;

 private:
  double m0_;
};

class EnergyTracker : public RunObserver {
 public:
  explicit EnergyTracker(const SchemeConfig& cfg) : cfg_(cfg) {}
  void on_step(const SimState& before, const SimState& after) override {
    if (energies.empty()) energies.push_back(total_energy(before, cfg_));
    energies.push_back(total_energy(after, cfg_));
  }
  bool monotone() const {
    for (std::size_t i = 1; i < energies.size(); ++i) {
      if (energies[i] > energies[i - 1]) return false;
    }
    return true;
  }
  std::vector<double> energies;

 private:
  const SchemeConfig& cfg_;
};

}  // namespace

CheckResult spectral_oracle(int fields, int n, double tol, std::uint64_t seed) {
  const oracle::DenseSpectralOracle dense(n);
  const Grid g(n);
  std::mt19937_64 rng(seed);
  auto random_values = [&] {
    GridArray<double> v(n, n);
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = 2.0 * unit_double(rng()) - 1.0;
    return v;
  };
  double worst = 0.0;
  std::string worst_op = "none";
  auto note = [&](double err, const char* op) {
    if (err > worst) {
      worst = err;
      worst_op = op;
    }
  };
  for (int i = 0; i < fields; ++i) {
    const GridArray<double> v = random_values();
    const ScalarField f = forward_transform(g, v);
    const oracle::CoeffTable c = dense.transform(v);
    note((f.coeffs() - c).abs().maxCoeff(), "forward transform");
    note((c - oracle::definitional_transform(v)).abs().maxCoeff(), "dense vs definitional sum");
    note(max_abs(inverse_transform(f), dense.inverse(c)), "inverse transform");
    note(max_abs(inverse_transform(f), v), "round trip");
    for (int axis = 0; axis < 2; ++axis) {
      for (int order = 1; order <= 3; ++order) {
        note(max_abs(inverse_transform(derivative(f, axis, order)), dense.derivative(v, axis, order)), "derivative");
      }
    }
    note(max_abs(inverse_transform(laplacian(f)), dense.laplacian(v)), "laplacian");
    note(max_abs(inverse_transform(bilaplacian(f)), dense.bilaplacian(v)), "bilaplacian");
    const GridArray<double> v0 = v - v.mean();
    note(max_abs(inverse_transform(inverse_laplacian(forward_transform(g, v0))), dense.inverse_laplacian(v0)),
         "inverse laplacian");
    const GridArray<double> w = random_values();
    const VectorField p = leray_project(VectorField(f, forward_transform(g, w)));
    const auto [p1, p2] = dense.leray(v, w);
    note(std::max(max_abs(inverse_transform(p.u1), p1), max_abs(inverse_transform(p.u2), p2)), "leray");
  }
  return {"spectral oracle equivalence", worst <= tol, worst, tol,
          std::to_string(fields) + " random fields at N = " + std::to_string(n) + ", worst operation: " + worst_op};
}

CheckResult mass_conservation(int n, double dt, std::int64_t steps, double linf, double tol) {
  const SchemeConfig cfg = default_scheme(dt);
  const SimState s0 = random_state(n, 3, 4, linf, 0.5);
  MassTracker tracker(mean(s0.theta));
  const RunResult r = run(s0, cfg, quiet_options(double(steps) * dt, steps), {&tracker});
  return {"mass conservation", tracker.worst <= tol, tracker.worst, tol,
          std::to_string(steps) + " coupled steps at N = " + std::to_string(n) + ", dt = " + fmt("%g", dt) +
              ", final mean " + fmt("%.3e", r.records.back().mass)};
}

EnergyStudy energy_study(int n, double t_end, double base_dt, int halvings) {
  EnergyStudy s;
  SchemeConfig cfg = default_scheme(base_dt);
  cfg.korteweg_force = false;
  const Grid g(n);
  const SimState s0(random_band(g, 5, 3, 0.9), VectorField(g));

  // Monotonicity sweep: 40 steps at each dt, largest first.
  for (double dt = 12.8; dt > 5e-5; dt *= 0.5) {
    cfg.dt = dt;
    EnergyTracker tracker(cfg);
    bool ok = true;
    try {
      run(s0, cfg, quiet_options(40 * dt, 40), {&tracker});
      ok = tracker.monotone();
    } catch (const Error&) {
      ok = false;
    }
    s.swept_dt.push_back(dt);
    s.monotone.push_back(ok);
  }
  for (std::size_t i = s.swept_dt.size(); i-- > 0;) {
    if (!s.monotone[i]) break;
    s.dt0 = s.swept_dt[i];
  }

  double dt = base_dt;
  for (int k = 0; k <= halvings; ++k, dt *= 0.5) {
    cfg.dt = dt;
    RunOptions o = quiet_options(t_end, std::numeric_limits<std::int64_t>::max());
    o.energy_residual = true;
    const RunResult r = run(s0, cfg, o);
    s.residual_dt.push_back(dt);
    s.residuals.push_back(r.records.back().energy_residual);
    if (k > 0) s.ratios.push_back(s.residuals[k] / s.residuals[k - 1]);
  }
  return s;
}

CheckResult energy_law(const EnergyStudy& s, double lo, double hi) {
  bool ok = s.dt0 > 0.0 && !s.ratios.empty();
  double worst = 0.0;
  for (double r : s.ratios) {
    ok = ok && r >= lo && r <= hi;
    worst = std::max(worst, std::abs(r - 0.5));
  }
  return {"discrete energy law", ok, worst, hi - 0.5,
          "dt0 = " + fmt("%g", s.dt0) +
              (!s.swept_dt.empty() && s.dt0 == s.swept_dt.front() ? " (monotone at every swept dt, largest swept)" : "") +
              ", residuals " + join(s.residuals) + ", ratios " + join(s.ratios) +
              " (band [" + fmt("%g", lo) + ", " + fmt("%g", hi) + "])"};
}

CheckResult separation(int n, double t_end, double dt, double delta0) {
  const SchemeConfig cfg = default_scheme(dt);
  const SimState s0 = random_state(n, 9, 4, 1.0 - delta0, 0.5);
  RunOptions o = quiet_options(t_end, 10, delta0);
  const RunResult r = run(s0, cfg, o);
  double min_delta = std::numeric_limits<double>::infinity();
  for (const auto& rec : r.records) min_delta = std::min(min_delta, rec.delta);
  const auto clamps = r.events.clamps.events;
  return {"separation", min_delta > 0.0 && clamps == 0, min_delta, 0.0,
          std::to_string(r.records.size()) + " samples to T = " + fmt("%g", t_end) + " at N = " + std::to_string(n) +
              ", min delta = " + fmt("%.6f", min_delta) + ", clamp events = " + std::to_string(clamps)};
}

CheckResult envelope(int n, double eps, double t_end, double dt, double slack) {
  SchemeConfig cfg = default_scheme(dt);
  cfg.epsilon = eps;
  const SimState s0 = random_state(n, 13, 4, 0.9, 0.5);
  EnvelopeTracker tracker(s0, cfg, eps, slack, 2);
  run(s0, cfg, quiet_options(t_end, 10), {&tracker});
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : tracker.reports()) {
    worst = std::max({worst, r.theta_max - r.y_plus, r.y_minus - r.theta_min});
  }
  const auto& last = tracker.reports().back();
  return {"comparison envelope", tracker.all_passed(), worst, slack,
          std::to_string(tracker.reports().size()) + " samples, eps = " + fmt("%g", eps) + ", final [" +
              fmt("%.6f", last.y_minus) + ", " + fmt("%.6f", last.y_plus) + "] around [" + fmt("%.6f", last.theta_min) +
              ", " + fmt("%.6f", last.theta_max) + "]"};
}

EpsilonStudy epsilon_study(int n, double t_end, double dt, double eps0, int halvings) {
  EpsilonStudy s;
  SchemeConfig cfg = default_scheme(dt);
  const SimState s0 = random_state(n, 17, 3, 0.9, 0.5);
  const RunOptions o = quiet_options(t_end, std::numeric_limits<std::int64_t>::max());
  cfg.epsilon = 0.0;
  const ScalarField ref = run(s0, cfg, o).final_state.theta;
  double eps = eps0;
  for (int k = 0; k <= halvings; ++k, eps *= 0.5) {
    cfg.epsilon = eps;
    s.eps.push_back(eps);
    s.errors.push_back(l2_norm(run(s0, cfg, o).final_state.theta - ref));
    if (k > 0) s.ratios.push_back(s.errors[k] / s.errors[k - 1]);
  }
  return s;
}

CheckResult epsilon_convergence(const EpsilonStudy& s, double lo, double hi) {
  bool ok = !s.ratios.empty();
  double worst = 0.0;
  for (double r : s.ratios) {
    ok = ok && r >= lo && r <= hi;
    worst = std::max(worst, std::abs(r - 0.5));
  }
  return {"epsilon convergence", ok, worst, hi - 0.5,
          "eps " + join(s.eps) + ", errors " + join(s.errors) + ", ratios " + join(s.ratios)};
}

CheckResult biharmonic_semigroup_check(double tol, double delta0) {
  const Grid g(32);
  double worst = 0.0;
  const int modes[][2] = {{1, 0}, {2, 0}, {1, 2}, {3, -1}};
  for (const auto& m : modes) {
    const ScalarField f = from_function(g, [&](double x1, double x2) { return std::cos(m[0] * x1 + m[1] * x2); });
    for (double t : {1e-3, 0.05, 0.37}) {
      const double kk = double(m[0] * m[0] + m[1] * m[1]);
      const GridArray<double> got = inverse_transform(biharmonic_semigroup(f, t));
      const GridArray<double> want = std::exp(-t * kk * kk) * inverse_transform(f);
      worst = std::max(worst, max_abs(got, want));
    }
  }
  const ScalarField f = random_band_raw(g, 21, 8);
  for (auto [t, s] : {std::pair{1e-3, 2e-3}, std::pair{0.1, 0.05}, std::pair{1e-5, 0.3}}) {
    const ScalarField a = biharmonic_semigroup(biharmonic_semigroup(f, t), s);
    const ScalarField b = biharmonic_semigroup(f, t + s);
    worst = std::max(worst, (a.coeffs() - b.coeffs()).abs().maxCoeff());
  }
  bool ok = worst <= tol;

  // ||S(t) theta0 - theta0||_inf decreases as t decreases to 0.
  const ScalarField smooth = random_band(Grid(64), 23, 4, 1.0 - delta0);
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 1e-1; t >= 1e-6 * 0.999; t *= 0.1) {
    const double d = linf_norm(biharmonic_semigroup(smooth, t) - smooth, 2);
    ok = ok && d < prev;
    prev = d;
  }

  // T1: largest scanned t up to which ||S(t) theta0||_inf <= ||theta0||_inf + delta0/4.
  const double sup0 = linf_norm(smooth, 2);
  double t1 = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = 1e-8 * std::pow(10.0, 9.0 * i / 400.0);
    if (linf_norm(biharmonic_semigroup(smooth, t), 2) > sup0 + 0.25 * delta0) break;
    t1 = t;
  }
  ok = ok && t1 > 0.0;
  return {"bi-harmonic semigroup", ok, worst, tol,
          "T1 = " + fmt("%g", t1) + (t1 >= 10.0 ? " (bound held on the whole scan)" : "")};
}

CheckResult korteweg_identity(int n, int oversample, double tol, const PotentialParams& p, std::uint64_t seed) {
  const Grid g(n);
  SchemeConfig cfg(p);
  const ScalarField theta = random_band(g, seed, n / 4, 0.5);
  const VectorField a = korteweg_force_oversampled(theta, cfg, oversample);
  const VectorField b = korteweg_stress_force(theta, cfg.kappa, oversample);
  const double err = l2_norm(a - b);
  return {"Korteweg identity", err <= tol, err, tol,
          "N = " + std::to_string(n) + ", modes <= " + std::to_string(n / 4) + ", " + std::to_string(oversample) +
              "x oversampled products, ||P(mu grad theta)|| = " + fmt("%.4g", l2_norm(a))};
}

CheckResult potential_suite(const PotentialParams& p, std::size_t assumption_samples, std::size_t young_pairs,
                            double fd_tol) {
  std::ostringstream detail;
  const AssumptionReport rep = assumption_check(p, assumption_samples);
  bool ok = rep.passed;
  detail << "assumptions " << (rep.passed ? "ok" : "FAILED") << " on " << rep.samples << " samples";

  std::mt19937_64 rng(31);
  double young_worst_gap = 0.0;
  double equality_worst = 0.0;
  for (std::size_t i = 0; i < young_pairs; ++i) {
    const double a = 50.0 * unit_double(rng());
    const double b = 50.0 * unit_double(rng());
    const double gap = young_A(a) + young_A_tilde(b) - a * b;
    if (gap < -1e-12 * std::max(1.0, a * b)) ok = false;
    young_worst_gap = std::min(young_worst_gap, gap / std::max(1.0, a * b));
    if (young_A_tilde(b) > b * std::log1p(b) * (1.0 + 1e-15)) ok = false;
    // Equality case q > 0, p = ln(1 + q).
    const double q = std::max(b, 1e-3);
    const double pe = std::log1p(q);
    const double rhs = young_A(pe) + young_A_tilde(q);
    equality_worst = std::max(equality_worst, std::abs(rhs - pe * q) / std::max(1.0, pe * q));
  }
  ok = ok && equality_worst <= 1e-12;
  detail << "; Young worst relative gap " << young_worst_gap << ", equality case " << equality_worst;

  double fd_worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double s;
    if (i <= 1000) {
      s = -0.99 + 1.98 * i / 1000.0;
    } else {
      const double gap = std::pow(10.0, -2.0 - 4.0 * (i - 1001) / 999.0);
      s = (i % 2 ? 1.0 : -1.0) * (1.0 - gap);
    }
    const double h = std::min(1e-5, 1e-3 * (1.0 - std::abs(s)));
    const double d_Phi = (Phi(s + h, p) - Phi(s - h, p)) / (2.0 * h);
    const double d_phi = (phi(s + h, p) - phi(s - h, p)) / (2.0 * h);
    fd_worst = std::max(fd_worst, std::abs(d_Phi - phi(s, p)) / std::max(1.0, std::abs(phi(s, p))));
    fd_worst = std::max(fd_worst, std::abs(d_phi - phi_prime(s, p)) / std::max(1.0, std::abs(phi_prime(s, p))));
  }
  ok = ok && fd_worst <= fd_tol;
  detail << "; finite differences " << fd_worst;
  return {"potential property suite", ok, fd_worst, fd_tol, detail.str()};
}

CheckResult ode_identity(const PotentialParams& p, double tol) {
  const double eps = 0.1;
  const double T = 1.0;
  auto phi_raw = [&](double y) { return p.alpha0() * std::atanh(y) - p.alpha() * y; };
  auto trajectory_residual = [&](double y0, double dt, const std::function<double(double)>& h) {
    const auto steps = static_cast<int>(std::llround(T / dt));
    std::vector<double> ts{0.0}, ys{y0}, hs{h(0.0)};
    double y = y0;
    for (int k = 1; k <= steps; ++k) {
      const double t = k * dt;
      y = ode_step(y, h(t), eps, dt, p);
      ts.push_back(t);
      ys.push_back(y);
      hs.push_back(h(t));
    }
    return ode_energy_identity_residual(ts, ys, hs, eps, p);
  };

  double stationary = 0.0;
  bool ok = true;
  for (double hv : {0.0, 0.5, -1.3, 3.0}) {
    double y_star = 0.0;
    if (hv != 0.0) {
      // phi is not monotone on (-1, 1) when alpha > alpha0: bracket the root on the increasing branch.
      const double edge = std::sqrt(1.0 - p.alpha0() / p.alpha());
      y_star = hv > 0.0 ? oracle::bisect([&](double y) { return phi_raw(y) - hv; }, edge, 1.0 - 1e-15, 1e-16)
                        : oracle::bisect([&](double y) { return phi_raw(y) - hv; }, -1.0 + 1e-15, -edge, 1e-16);
    }
    stationary = std::max(stationary, trajectory_residual(y_star, 1e-2, [&](double) { return hv; }));
  }
  ok = stationary <= tol;

  std::vector<double> res;
  std::vector<double> ratios;
  const auto forcing = [](double t) { return 1.5 * std::sin(2.0 * t); };
  for (double dt = 1e-2; dt > 1e-3; dt *= 0.5) {
    res.push_back(trajectory_residual(0.3, dt, forcing));
    if (res.size() > 1) ratios.push_back(res.back() / res[res.size() - 2]);
  }
  for (double r : ratios) ok = ok && r >= 0.4 && r <= 0.6;
  return {"ODE energy identity", ok, stationary, tol,
          "stationary residual " + fmt("%.3e", stationary) + ", forced residuals " + join(res) + ", ratios " +
              join(ratios)};
}

CheckResult mean_phi_identity(const PotentialParams& p, int fields, double tol) {
  const Grid g(64);
  std::mt19937_64 rng(41);
  double worst = 0.0;
  for (int i = 0; i < fields; ++i) {
    const int band = 1 + static_cast<int>(rng() % 6);
    const double target = 0.3 + 0.65 * unit_double(rng());
    const ScalarField theta = random_band(g, rng(), band, target);
    worst = std::max(worst, mean_phi_check(theta, p, 4).identity_residual);
  }
  return {"mean-of-phi identity", worst <= tol, worst, tol, std::to_string(fields) + " separated mean-zero fields"};
}

CheckResult inequality_monitors(int fields, const std::vector<int>& grids, double tol) {
  std::vector<double> orlicz_max, logsob_max;
  for (int n : grids) {
    const Grid g(n);
    double om = 0.0;
    double lm = 0.0;
    for (int i = 0; i < fields; ++i) {
      const int band = 1 + i % 8;
      const double scale = 0.1 + 2.9 * unit_double(std::mt19937_64(1000 + i)());
      const ScalarField v = scale * random_band_raw(g, 5000 + i, band);
      om = std::max(om, orlicz_ratio(v, 1.0, 2));
      lm = std::max(lm, log_sobolev_ratio(v, 2.0, 2));
    }
    orlicz_max.push_back(om);
    logsob_max.push_back(lm);
  }
  auto spread = [](const std::vector<double>& v) {
    double lo = v[0], hi = v[0];
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    return std::isfinite(hi) && lo > 0.0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity();
  };
  const double worst = std::max(spread(orlicz_max), spread(logsob_max));
  return {"inequality monitors", worst < tol, worst, tol,
          "orlicz maxima " + join(orlicz_max) + ", log-Sobolev maxima " + join(logsob_max)};
}

RunConfig determinism_config() {
  ParsedConfig pc = parse_config(
      "grid.N = 32\n"
      "potential.alpha0 = 1\n"
      "potential.alpha = 2\n"
      "run.t_end = 0.02\n"
      "run.sample_every = 20\n"
      "scheme.dt = 1e-4\n"
      "ic.kind = random_band\n"
      "ic.seed = 2024\n"
      "ic.velocity = random_band\n"
      "ic.velocity_amplitude = 0.5\n");
  return std::move(pc.config);
}

CheckResult determinism(const RunConfig& cfg) {
  auto once = [&] {
    const RunResult r = run(make_initial_state(cfg), cfg.scheme, cfg.run_options());
    std::ostringstream os;
    write_csv(os, r.records);
    return os.str();
  };
  const std::string a = once();
  const std::string b = once();
  return {"determinism", a == b, a == b ? 0.0 : 1.0, 0.0,
          std::to_string(a.size()) + " CSV bytes, " + (a == b ? "identical" : "DIFFERENT")};
}

}  // namespace nsch::checks
