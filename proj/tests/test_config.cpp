#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "nsch/config.hpp"
#include "nsch/io.hpp"

using namespace nsch;

namespace {

const char* kMinimal =
    "grid.N = 32\n"
    "potential.alpha0 = 1\n"
    "potential.alpha = 2\n"
    "run.t_end = 0.01\n";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config") {
  const ParsedConfig pc = parse_config(kMinimal);
  const RunConfig& c = pc.config;
  CHECK(pc.warnings.empty());
  CHECK(c.N == 32);
  CHECK(c.t_end == 0.01);
  CHECK(c.scheme.potential.alpha() == 2.0);
  CHECK(c.scheme.stabilization() == 4.0);
  CHECK(c.scheme.epsilon == 0.0);
  CHECK(c.ic.kind == IcKind::random_band);
  CHECK(c.ic.seed == 1);
  CHECK(c.output.csv);
  CHECK_FALSE(c.envelope.enabled);
  CHECK(c.run_options().delta0 == 0.1);
}

TEST_CASE("comments, blank lines and all sections") {
  const ParsedConfig pc = parse_config(std::string(kMinimal) +
                                       "# comment\n\n"
                                       "scheme.dt = 5e-4   # trailing\n"
                                       "scheme.epsilon = 0.01\n"
                                       "scheme.viscosity = affine\n"
                                       "scheme.nu_a = 1\n"
                                       "scheme.nu_b = 0.5\n"
                                       "ic.kind = modes\n"
                                       "ic.modes = 1:0:0.3, 0:2:0.1:0.05\n"
                                       "output.emit = csv,heatmaps\n"
                                       "envelope.enabled = true\n");
  const RunConfig& c = pc.config;
  CHECK(c.scheme.dt == 5e-4);
  CHECK(c.scheme.viscosity.nu_min() == 0.5);
  CHECK(c.ic.modes.size() == 2);
  CHECK(c.output.heatmaps);
  CHECK_FALSE(c.output.snapshots);
  CHECK(c.envelope_epsilon() == 0.01);

  const SimState s = make_initial_state(c);
  CHECK(s.theta.at(1, 0).real() == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(std::abs(mean(s.theta)) <= 1e-15);
}

TEST_CASE("potential ordering error") {
  const std::string msg = error_of("grid.N = 32\npotential.alpha0 = 2\npotential.alpha = 1\nrun.t_end = 1\n");
  CHECK(msg.find("0 < alpha0 < alpha") != std::string::npos);
  CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("duplicate keys warn and the last one wins") {
  const ParsedConfig pc = parse_config(std::string(kMinimal) + "grid.N = 64\n");
  CHECK(pc.config.N == 64);
  REQUIRE(pc.warnings.size() == 1);
  CHECK(pc.warnings[0].find("duplicate key 'grid.N'") != std::string::npos);
  CHECK(pc.warnings[0].find("line 5") != std::string::npos);
}

TEST_CASE("unknown key names its line") {
  const std::string msg = error_of(std::string(kMinimal) + "scheme.dtt = 1e-3\n");
  CHECK(msg.find("line 5: unknown key 'scheme.dtt'") != std::string::npos);
}

TEST_CASE("every problem is listed") {
  const std::string msg = error_of("grid.N = 7\npotential.alpha0 = 1\nscheme.dt = -1\nbogus\n");
  CHECK(msg.find("line 1") != std::string::npos);
  CHECK(msg.find("scheme.dt must be positive") != std::string::npos);
  CHECK(msg.find("line 4: expected 'key = value'") != std::string::npos);
  CHECK(msg.find("missing required key potential.alpha") != std::string::npos);
  CHECK(msg.find("missing required key run.t_end") != std::string::npos);
}

TEST_CASE("malformed values") {
  CHECK(error_of(std::string(kMinimal) + "scheme.dt = fast\n").find("line 5") != std::string::npos);
  CHECK_FALSE(error_of(std::string(kMinimal) + "ic.kind = square\n").empty());
  CHECK_FALSE(error_of(std::string(kMinimal) + "envelope.enabled = yes please\n").empty());
  CHECK_FALSE(error_of(std::string(kMinimal) + "envelope.enabled = true\n").empty());
  CHECK_FALSE(error_of(std::string(kMinimal) + "scheme.galerkin_n = 40\n").empty());
  CHECK_FALSE(error_of(std::string(kMinimal) + "ic.kind = modes\n").empty());
}

TEST_CASE("low stabilization is a warning") {
  const ParsedConfig pc = parse_config(std::string(kMinimal) + "scheme.S = 1\n");
  REQUIRE(pc.warnings.size() == 1);
  CHECK(pc.warnings[0].find("stabilization") != std::string::npos);
}

TEST_CASE("initial conditions") {
  const RunConfig c = parse_config(kMinimal).config;
  const SimState s = make_initial_state(c);
  CHECK(linf_norm(s.theta, 2) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(max_coefficient(s.u) == 0.0);
  // deterministic in the seed
  CHECK((make_initial_state(c).theta.coeffs() == s.theta.coeffs()).all());

  const RunConfig b = parse_config(std::string(kMinimal) + "ic.kind = two_bubble\nic.velocity = taylor_green\n").config;
  const SimState tb = make_initial_state(b);
  CHECK(linf_norm(tb.theta, 2) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(std::abs(mean(tb.theta)) <= 1e-15);
  CHECK(is_divergence_free(tb.u));
  CHECK(max_coefficient(tb.u) > 0.0);
}

TEST_CASE("snapshot initial condition") {
  const auto dir = std::filesystem::temp_directory_path() / "nsch_test_config";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "snap.bin").string();
  const RunConfig c = parse_config(kMinimal).config;
  SimState s = make_initial_state(c);
  s.t = 0.5;
  write_snapshot(path, snapshot_of(s));

  const RunConfig r = parse_config(std::string(kMinimal) + "ic.kind = snapshot\nic.snapshot = " + path + "\n").config;
  const SimState back = make_initial_state(r);
  CHECK((back.theta.coeffs() - s.theta.coeffs()).abs().maxCoeff() <= 1e-15);
  CHECK(back.t == 0.5);

  const RunConfig wrong =
      parse_config("grid.N = 16\npotential.alpha0 = 1\npotential.alpha = 2\nrun.t_end = 1\nic.kind = snapshot\n"
                   "ic.snapshot = " + path + "\n")
          .config;
  CHECK_THROWS_AS(make_initial_state(wrong), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_config on a missing file") { CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), IoError); }
