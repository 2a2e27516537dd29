#pragma once

// Flat `key = value` run configuration. '#' starts a comment, keys are
// dotted paths, unknown keys are rejected and a repeated key keeps its last
// value (with a warning).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsch/initial_conditions.hpp"
#include "nsch/simulation.hpp"

namespace nsch {

enum class IcKind { modes, random_band, two_bubble, snapshot };

struct IcConfig {
  IcKind kind = IcKind::random_band;
  std::uint64_t seed = 1;
  std::string rng = "mt19937_64";
  int band = 4;
  std::optional<double> target_linf;  ///< defaults to 1 - delta0
  double delta0 = 0.1;
  std::vector<ModeSpec> modes;
  double bubble_width = 0.15;
  std::string snapshot_path;
  VelocityKind velocity = VelocityKind::zero;
  double velocity_amplitude = 0.1;
  int velocity_band = 3;
};

struct OutputConfig {
  std::string dir = ".";
  bool snapshots = false;
  bool csv = true;
  bool heatmaps = false;
};

struct EnvelopeConfig {
  bool enabled = false;
  std::optional<double> epsilon_ode;  ///< defaults to scheme.epsilon
  double slack = 1e-6;
};

struct RunConfig {
  explicit RunConfig(SchemeConfig s) : scheme(std::move(s)) {}

  int N = 64;
  SchemeConfig scheme;
  IcConfig ic;
  double t_end = 0.0;
  std::int64_t sample_every = 100;
  OutputConfig output;
  EnvelopeConfig envelope;
  DiagnosticsOptions diagnostics;

  Grid grid() const { return Grid(N); }
  RunOptions run_options() const;
  double envelope_epsilon() const;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

/// Throws ConfigError listing every violation with its line number.
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config(const std::string& path);

/// Keys accepted by parse_config.
const std::vector<std::string>& config_keys();

/// Builds the initial state described by cfg.ic on cfg's grid.
SimState make_initial_state(const RunConfig& cfg);

}  // namespace nsch
