#include "nsch/simulation.hpp"

#include <cmath>
#include <sstream>

namespace nsch {

std::int64_t step_count(double t_end, double dt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("run.t_end must be finite and nonnegative");
  return static_cast<std::int64_t>(std::llround(t_end / dt));
}

void validate_initial_state(const SimState& s, double delta0) {
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw ConfigError("delta0 must lie in (0, 1)");
  std::vector<std::string> problems;
  std::ostringstream os;
  os.precision(17);
  const double sup = linf_norm(s.theta, 2);
  if (!(sup <= 1.0 - delta0)) {
    os << "initial datum violates ||theta0||_inf <= 1 - delta0: ||theta0||_inf = " << sup << ", delta0 = " << delta0;
    problems.push_back(os.str());
    os.str("");
  }
  const double m = mean(s.theta);
  if (std::abs(m) > 1e-12) {
    os << "initial order parameter must have zero mean, got " << m;
    problems.push_back(os.str());
    os.str("");
  }
  if (!is_divergence_free(s.u)) {
    os << "initial velocity is not divergence free: max |div u0| = " << max_divergence(s.u);
    problems.push_back(os.str());
  }
  if (problems.empty()) return;
  std::string msg = problems.front();
  for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
  throw PreconditionError(msg);
}

RunResult run(SimState state0, const SchemeConfig& cfg, const RunOptions& opt,
              const std::vector<RunObserver*>& observers) {
  RunResult result{state0, {}, {}, cfg.validate()};
  validate_initial_state(state0, opt.delta0);
  if (opt.sample_every < 1) throw ConfigError("run.sample_every must be >= 1");
  if (cfg.galerkin_n) {
    state0.theta = galerkin_cutoff(state0.theta, *cfg.galerkin_n);
    state0.u = galerkin_cutoff(state0.u, *cfg.galerkin_n);
    state0.prev_theta = state0.theta;
  }

  const std::int64_t nsteps = step_count(opt.t_end, cfg.dt);
  auto emit = [&](const SimState& s, double residual) {
    result.records.push_back(make_record(s, cfg, opt.diagnostics, result.events.clamps.events, residual));
    for (RunObserver* o : observers) o->on_sample(result.records.back(), s);
  };

  SimState state = std::move(state0);
  emit(state, 0.0);
  for (std::int64_t n = 1; n <= nsteps; ++n) {
    SimState next = coupled_step(state, cfg, &result.events);
    for (RunObserver* o : observers) o->on_step(state, next);
    if (n % opt.sample_every == 0 || n == nsteps) {
      const double residual =
          opt.energy_residual ? energy_law_residual(state, next, cfg, opt.diagnostics.energy_oversample) : 0.0;
      state = std::move(next);
      emit(state, residual);
    } else {
      state = std::move(next);
    }
  }
  if (result.events.cfl_warnings > 0) {
    result.warnings.push_back("CFL guard dt ||u||_inf N > 1 tripped on " + std::to_string(result.events.cfl_warnings) +
                              " steps");
  }
  result.final_state = std::move(state);
  return result;
}

EnvelopeTracker::EnvelopeTracker(const SimState& state0, const SchemeConfig& cfg, double epsilon_ode, double slack,
                                 int oversample)
    : cfg_(&cfg), env_(state0.theta, epsilon_ode, oversample), slack_(slack), oversample_(oversample) {
  if (cfg.kappa != 1.0 || cfg.mobility != 1.0) {
    throw ConfigError("envelope tracking is defined for kappa = 1 and mobility = 1");
  }
}

void EnvelopeTracker::on_step(const SimState& before, const SimState& after) {
  const double dt = after.t - before.t;
  const ScalarField dtheta = (1.0 / dt) * (after.theta - before.theta);
  const ScalarField h = compute_h_tilde(after, dtheta, cfg_->potential, cfg_->clamp);
  env_.advance(after.t, linf_norm(h, oversample_), cfg_->potential);
}

void EnvelopeTracker::on_sample(const DiagnosticsRecord&, const SimState& state) {
  reports_.push_back(envelope_check(state.theta, env_, slack_));
  times_.push_back(state.t);
}

bool EnvelopeTracker::all_passed() const {
  for (const auto& r : reports_) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace nsch
