#pragma once

// Time integration driver: validates the initial datum, iterates
// coupled_step and hands records and states to observers.

#include <cstdint>
#include <memory>
#include <vector>

#include "nsch/diagnostics.hpp"
#include "nsch/envelope.hpp"

namespace nsch {

struct RunOptions {
  double t_end = 0.0;
  std::int64_t sample_every = 100;
  double delta0 = 0.1;  ///< initial datum must satisfy ||theta0||_inf <= 1 - delta0
  DiagnosticsOptions diagnostics;
  bool energy_residual = true;
};

/// Callbacks see immutable states; default implementations do nothing.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_step(const SimState& /*before*/, const SimState& /*after*/) {}
  virtual void on_sample(const DiagnosticsRecord& /*record*/, const SimState& /*state*/) {}
};

struct RunResult {
  SimState final_state;
  StepEvents events;
  std::vector<DiagnosticsRecord> records;
  std::vector<std::string> warnings;
};

/// Number of steps taken for t_end at step size dt.
std::int64_t step_count(double t_end, double dt);

/// Rejects data violating ||theta0||_inf <= 1 - delta0 (on the 2x grid),
/// mean(theta0) = 0 or div u0 = 0.
void validate_initial_state(const SimState& s, double delta0);

RunResult run(SimState state0, const SchemeConfig& cfg, const RunOptions& opt,
              const std::vector<RunObserver*>& observers = {});

/// Tracks the comparison envelopes along a run.
class EnvelopeTracker : public RunObserver {
 public:
  EnvelopeTracker(const SimState& state0, const SchemeConfig& cfg, double epsilon_ode, double slack = 1e-6,
                  int oversample = 2);

  void on_step(const SimState& before, const SimState& after) override;
  void on_sample(const DiagnosticsRecord& record, const SimState& state) override;

  const EnvelopeState& envelope() const { return env_; }
  const std::vector<EnvelopeReport>& reports() const { return reports_; }
  const std::vector<double>& sample_times() const { return times_; }
  bool all_passed() const;

 private:
  const SchemeConfig* cfg_;
  EnvelopeState env_;
  double slack_;
  int oversample_;
  std::vector<EnvelopeReport> reports_;
  std::vector<double> times_;
};

}  // namespace nsch
