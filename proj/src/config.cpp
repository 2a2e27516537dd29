#include "nsch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nsch/io.hpp"

namespace nsch {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Collects violations so the final error lists all of them.
class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<double> real(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    try {
      std::size_t used = 0;
      const double v = std::stod(e->value, &used);
      if (used != e->value.size() || !std::isfinite(v)) throw std::invalid_argument(key);
      return v;
    } catch (const std::logic_error&) {
      fail(*e, key + " expects a finite number, got '" + e->value + "'");
      return std::nullopt;
    }
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    std::int64_t v = 0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      fail(*e, key + " expects an integer, got '" + e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::uint64_t> unsigned_integer(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    std::uint64_t v = 0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      fail(*e, key + " expects a nonnegative integer, got '" + e->value + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<bool> boolean(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "1" || e->value == "yes" || e->value == "on") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no" || e->value == "off") return false;
    fail(*e, key + " expects true or false, got '" + e->value + "'");
    return std::nullopt;
  }

  std::optional<std::string> text(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  /// Value must be one of `choices`; returns its index.
  std::optional<std::size_t> choice(const std::string& key, const std::vector<std::string>& choices) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    const auto it = std::find(choices.begin(), choices.end(), e->value);
    if (it == choices.end()) {
      std::string list;
      for (const auto& c : choices) list += (list.empty() ? "" : " | ") + c;
      fail(*e, key + " must be one of " + list + ", got '" + e->value + "'");
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - choices.begin());
  }

  void check(bool ok, const std::string& key, const std::string& message) {
    if (ok) return;
    const Entry* e = find(key);
    if (e) {
      fail(*e, message);
    } else {
      errors_.push_back(message);
    }
  }

  void require(const std::string& key) {
    if (!has(key)) errors_.push_back("missing required key " + key);
  }

  void error(std::string message) { errors_.push_back(std::move(message)); }
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  const Entry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }
  void fail(const Entry& e, const std::string& message) {
    errors_.push_back("line " + std::to_string(e.line) + ": " + message);
  }

  std::map<std::string, Entry> entries_;
  std::vector<std::string> errors_;
};

[[noreturn]] void throw_errors(const std::vector<std::string>& errors) {
  std::string msg = "invalid configuration (" + std::to_string(errors.size()) + " problem" +
                    (errors.size() == 1 ? "" : "s") + "):";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ConfigError(msg);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "grid.N",
      "scheme.dt",
      "scheme.S",
      "scheme.epsilon",
      "scheme.galerkin_n",
      "scheme.kappa",
      "scheme.mobility",
      "scheme.viscosity",
      "scheme.nu_a",
      "scheme.nu_b",
      "scheme.korteweg_force",
      "scheme.clamp",
      "potential.alpha0",
      "potential.alpha",
      "potential.clamp_margin",
      "ic.kind",
      "ic.seed",
      "ic.rng",
      "ic.band",
      "ic.target_linf",
      "ic.delta0",
      "ic.modes",
      "ic.bubble_width",
      "ic.snapshot",
      "ic.velocity",
      "ic.velocity_amplitude",
      "ic.velocity_band",
      "run.t_end",
      "run.sample_every",
      "output.dir",
      "output.emit",
      "envelope.enabled",
      "envelope.epsilon_ode",
      "envelope.slack",
      "diagnostics.energy_oversample",
      "diagnostics.linf_oversample",
  };
  return keys;
}

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.t_end = t_end;
  o.sample_every = sample_every;
  o.delta0 = ic.delta0;
  o.diagnostics = diagnostics;
  return o;
}

double RunConfig::envelope_epsilon() const {
  if (envelope.epsilon_ode) return *envelope.epsilon_ode;
  if (scheme.epsilon > 0.0) return scheme.epsilon;
  throw ConfigError("envelope tracking needs envelope.epsilon_ode or scheme.epsilon > 0");
}

ParsedConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::vector<std::string> warnings;
  std::vector<std::string> syntax_errors;
  const auto& known = config_keys();

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      syntax_errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      syntax_errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    if (value.empty()) {
      syntax_errors.push_back("line " + std::to_string(lineno) + ": key '" + key + "' has no value");
      continue;
    }
    const auto it = entries.find(key);
    if (it != entries.end()) {
      warnings.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "' overrides line " +
                         std::to_string(it->second.line));
    }
    entries[key] = {value, lineno};
  }

  Reader r(std::move(entries));
  for (auto& e : syntax_errors) r.error(e);
  for (const char* key : {"grid.N", "potential.alpha0", "potential.alpha", "run.t_end"}) r.require(key);

  // Potential first: SchemeConfig cannot exist without it.
  const auto a0 = r.real("potential.alpha0");
  const auto a = r.real("potential.alpha");
  const auto margin = r.real("potential.clamp_margin");
  std::optional<PotentialParams> pot;
  if (a0 && a) {
    if (!(*a0 > 0.0 && *a0 < *a)) {
      r.check(false, "potential.alpha0",
              "potential.alpha0 and potential.alpha must satisfy 0 < alpha0 < alpha (got alpha0 = " +
                  std::to_string(*a0) + ", alpha = " + std::to_string(*a) + ")");
    } else {
      try {
        pot.emplace(*a0, *a, margin.value_or(1e-12));
      } catch (const ConfigError& e) {
        r.check(false, "potential.clamp_margin", e.what());
      }
    }
  }

  RunConfig cfg(SchemeConfig(pot.value_or(PotentialParams(1.0, 2.0))));
  SchemeConfig& s = cfg.scheme;

  if (auto v = r.integer("grid.N")) {
    r.check(*v >= 8 && *v % 2 == 0 && *v <= 8192, "grid.N", "grid.N must be even and in [8, 8192]");
    cfg.N = static_cast<int>(*v);
  }

  if (auto v = r.real("scheme.dt")) {
    r.check(*v > 0.0, "scheme.dt", "scheme.dt must be positive");
    s.dt = *v;
  }
  if (auto v = r.real("scheme.S")) {
    r.check(*v >= 0.0, "scheme.S", "scheme.S must be nonnegative");
    s.S = *v;
  }
  if (auto v = r.real("scheme.epsilon")) {
    r.check(*v >= 0.0, "scheme.epsilon", "scheme.epsilon must be nonnegative");
    s.epsilon = *v;
  }
  if (auto v = r.integer("scheme.galerkin_n")) {
    r.check(*v > 0, "scheme.galerkin_n", "scheme.galerkin_n must be positive");
    s.galerkin_n = static_cast<int>(*v);
  }
  if (auto v = r.real("scheme.kappa")) {
    r.check(*v > 0.0, "scheme.kappa", "scheme.kappa must be positive");
    s.kappa = *v;
  }
  if (auto v = r.real("scheme.mobility")) {
    r.check(*v > 0.0, "scheme.mobility", "scheme.mobility must be positive");
    s.mobility = *v;
  }
  const auto visc = r.choice("scheme.viscosity", {"constant", "affine"});
  const double nu_a = r.real("scheme.nu_a").value_or(1.0);
  const double nu_b = r.real("scheme.nu_b").value_or(0.0);
  if (visc.value_or(0) == 0) {
    r.check(nu_b == 0.0, "scheme.nu_b", "scheme.nu_b requires scheme.viscosity = affine");
    s.viscosity = ViscosityModel::constant(nu_a);
  } else {
    s.viscosity = ViscosityModel::affine(nu_a, nu_b);
  }
  r.check(nu_a > 0.0 && nu_a - std::abs(nu_b) > 0.0, "scheme.nu_a",
          "viscosity must stay positive on [-1, 1]: need nu_a - |nu_b| > 0");
  if (auto v = r.boolean("scheme.korteweg_force")) s.korteweg_force = *v;
  if (auto v = r.choice("scheme.clamp", {"clamp", "strict"})) s.clamp = *v == 0 ? ClampPolicy::clamp : ClampPolicy::strict;

  IcConfig& ic = cfg.ic;
  if (auto v = r.choice("ic.kind", {"modes", "random_band", "two_bubble", "snapshot"})) ic.kind = static_cast<IcKind>(*v);
  if (auto v = r.unsigned_integer("ic.seed")) ic.seed = *v;
  if (r.choice("ic.rng", {"mt19937_64"})) ic.rng = "mt19937_64";
  if (auto v = r.integer("ic.band")) {
    r.check(*v >= 1 && *v < cfg.N / 2, "ic.band", "ic.band must lie in [1, N/2)");
    ic.band = static_cast<int>(*v);
  }
  if (auto v = r.real("ic.delta0")) {
    r.check(*v > 0.0 && *v < 1.0, "ic.delta0", "ic.delta0 must lie in (0, 1)");
    ic.delta0 = *v;
  }
  if (auto v = r.real("ic.target_linf")) {
    r.check(*v > 0.0, "ic.target_linf", "ic.target_linf must be positive");
    ic.target_linf = *v;
  }
  if (auto v = r.text("ic.modes")) {
    try {
      ic.modes = parse_modes(*v);
    } catch (const ConfigError& e) {
      r.check(false, "ic.modes", e.what());
    }
  }
  r.check(ic.kind != IcKind::modes || r.has("ic.modes"), "ic.kind", "ic.kind = modes requires ic.modes");
  if (auto v = r.real("ic.bubble_width")) {
    r.check(*v > 0.0, "ic.bubble_width", "ic.bubble_width must be positive");
    ic.bubble_width = *v;
  }
  if (auto v = r.text("ic.snapshot")) ic.snapshot_path = *v;
  r.check(ic.kind != IcKind::snapshot || !ic.snapshot_path.empty(), "ic.kind",
          "ic.kind = snapshot requires ic.snapshot");
  if (auto v = r.choice("ic.velocity", {"zero", "taylor_green", "random_band"})) ic.velocity = static_cast<VelocityKind>(*v);
  if (auto v = r.real("ic.velocity_amplitude")) {
    r.check(*v >= 0.0, "ic.velocity_amplitude", "ic.velocity_amplitude must be nonnegative");
    ic.velocity_amplitude = *v;
  }
  if (auto v = r.integer("ic.velocity_band")) {
    r.check(*v >= 1 && *v < cfg.N / 2, "ic.velocity_band", "ic.velocity_band must lie in [1, N/2)");
    ic.velocity_band = static_cast<int>(*v);
  }

  if (auto v = r.real("run.t_end")) {
    r.check(*v >= 0.0, "run.t_end", "run.t_end must be nonnegative");
    cfg.t_end = *v;
  }
  if (auto v = r.integer("run.sample_every")) {
    r.check(*v >= 1, "run.sample_every", "run.sample_every must be >= 1");
    cfg.sample_every = *v;
  }

  if (auto v = r.text("output.dir")) cfg.output.dir = *v;
  if (auto v = r.text("output.emit")) {
    cfg.output = OutputConfig{cfg.output.dir, false, false, false};
    std::string list = *v;
    std::replace(list.begin(), list.end(), ',', ' ');
    std::istringstream items(list);
    std::string item;
    while (items >> item) {
      if (item == "snapshots") cfg.output.snapshots = true;
      else if (item == "csv") cfg.output.csv = true;
      else if (item == "heatmaps") cfg.output.heatmaps = true;
      else if (item != "none") r.check(false, "output.emit", "output.emit entry '" + item + "' is not snapshots | csv | heatmaps | none");
    }
  }

  if (auto v = r.boolean("envelope.enabled")) cfg.envelope.enabled = *v;
  if (auto v = r.real("envelope.epsilon_ode")) {
    r.check(*v > 0.0, "envelope.epsilon_ode", "envelope.epsilon_ode must be positive");
    cfg.envelope.epsilon_ode = *v;
  }
  if (auto v = r.real("envelope.slack")) {
    r.check(*v >= 0.0, "envelope.slack", "envelope.slack must be nonnegative");
    cfg.envelope.slack = *v;
  }
  r.check(!cfg.envelope.enabled || cfg.envelope.epsilon_ode || s.epsilon > 0.0, "envelope.enabled",
          "envelope.enabled needs envelope.epsilon_ode or scheme.epsilon > 0");
  r.check(!cfg.envelope.enabled || (s.kappa == 1.0 && s.mobility == 1.0), "envelope.enabled",
          "envelope tracking is defined for scheme.kappa = 1 and scheme.mobility = 1");

  for (const char* key : {"diagnostics.energy_oversample", "diagnostics.linf_oversample"}) {
    if (auto v = r.integer(key)) {
      r.check(*v >= 1 && *v <= 8, key, std::string(key) + " must lie in [1, 8]");
      (std::string(key) == "diagnostics.energy_oversample" ? cfg.diagnostics.energy_oversample
                                                            : cfg.diagnostics.linf_oversample) = static_cast<int>(*v);
    }
  }

  if (r.errors().empty()) {
    try {
      for (auto& w : s.validate()) warnings.push_back(std::move(w));
      if (s.galerkin_n && *s.galerkin_n > cfg.N / 2) r.error("scheme.galerkin_n must not exceed N/2");
    } catch (const ConfigError& e) {
      r.error(e.what());
    }
  }
  if (!r.errors().empty()) throw_errors(r.errors());
  return {std::move(cfg), std::move(warnings)};
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

SimState make_initial_state(const RunConfig& cfg) {
  const IcConfig& ic = cfg.ic;
  if (ic.kind == IcKind::snapshot) {
    SimState s = state_from_snapshot(read_snapshot(ic.snapshot_path));
    if (s.grid().size() != cfg.N) {
      throw ConfigError("snapshot grid N = " + std::to_string(s.grid().size()) + " differs from grid.N = " +
                        std::to_string(cfg.N));
    }
    return s;
  }
  const Grid g = cfg.grid();
  const double target = ic.target_linf.value_or(1.0 - ic.delta0);
  ScalarField theta(g);
  switch (ic.kind) {
    case IcKind::modes:
      theta = modes_field(g, ic.modes);
      if (ic.target_linf) theta = rescale_linf(theta, *ic.target_linf);
      break;
    case IcKind::random_band:
      theta = random_band(g, ic.seed, ic.band, target);
      break;
    case IcKind::two_bubble:
      theta = two_bubble(g, ic.bubble_width, target);
      break;
    case IcKind::snapshot:
      break;
  }
  VectorField u = initial_velocity(g, ic.velocity, ic.velocity_amplitude, ic.seed, ic.velocity_band);
  return SimState(std::move(theta), std::move(u));
}

}  // namespace nsch
