#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nsch/initial_conditions.hpp"
#include "nsch/io.hpp"

using namespace nsch;

namespace {

SimState sample_state() {
  const Grid g(16);
  SimState s(random_band(g, 4, 5, 0.7), initial_velocity(g, VelocityKind::random_band, 0.3, 6, 4));
  s.t = 0.125;
  return s;
}

std::string encoded(const Snapshot& snap) {
  std::ostringstream out(std::ios::binary);
  write_snapshot(out, snap);
  return out.str();
}

}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  const Snapshot a = snapshot_of(sample_state());
  const std::string bytes = encoded(a);
  CHECK(bytes.size() == 5 + 2 + 4 + 8 + 3 * 16 * 16 * 8);
  CHECK(bytes.substr(0, 5) == "NSCH1");
  std::istringstream in(bytes, std::ios::binary);
  const Snapshot b = read_snapshot(in);
  CHECK(b.n == 16);
  CHECK(b.t == a.t);
  CHECK((b.theta == a.theta).all());
  CHECK((b.u1 == a.u1).all());
  CHECK((b.u2 == a.u2).all());
  CHECK(encoded(b) == bytes);

  const SimState s = state_from_snapshot(b);
  CHECK((inverse_transform(s.theta) - a.theta).abs().maxCoeff() <= 1e-15);
  CHECK(s.t == a.t);
}

TEST_CASE("snapshot errors") {
  const std::string bytes = encoded(snapshot_of(sample_state()));
  {
    std::istringstream in(bytes.substr(0, bytes.size() - 3), std::ios::binary);
    CHECK_THROWS_AS(read_snapshot(in), FormatError);
  }
  {
    std::string v2 = bytes;
    v2[5] = 2;
    v2[6] = 0;
    std::istringstream in(v2, std::ios::binary);
    try {
      read_snapshot(in);
      FAIL("expected a format error");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("version 2") != std::string::npos);
    }
  }
  {
    std::string bad = bytes;
    bad[0] = 'X';
    std::istringstream in(bad, std::ios::binary);
    CHECK_THROWS_AS(read_snapshot(in), FormatError);
  }
  CHECK_THROWS_AS(read_snapshot("/nonexistent/dir/snap.bin"), IoError);
}

TEST_CASE("csv") {
  std::ostringstream empty;
  write_csv(empty, {});
  const std::string header = empty.str();
  CHECK(std::count(header.begin(), header.end(), '\n') == 1);
  CHECK(header.rfind("t,mass,", 0) == 0);
  std::istringstream empty_in(empty.str());
  CHECK(read_csv(empty_in).empty());

  std::vector<DiagnosticsRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    recs[i].t = 0.1 * i;
    recs[i].mass = -1e-17 * i;
    recs[i].E_free = std::exp(1.0) / 3.0 + i;
    recs[i].delta = 1.0 / 7.0;
    recs[i].clamp_events = 12345678901ULL;
    recs[i].energy_residual = 3e-300;
  }
  std::ostringstream out;
  write_csv(out, recs);
  std::istringstream in(out.str());
  const auto back = read_csv(in);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].t == recs[i].t);
    CHECK(back[i].mass == recs[i].mass);
    CHECK(back[i].E_free == recs[i].E_free);
    CHECK(back[i].delta == recs[i].delta);
    CHECK(back[i].clamp_events == recs[i].clamp_events);
    CHECK(back[i].energy_residual == recs[i].energy_residual);
  }
  std::istringstream bad("t,mass\n1,2\n");
  CHECK_THROWS_AS(read_csv(bad), FormatError);
}

TEST_CASE("heatmap") {
  CHECK(heatmap_pixel(0.0) == 128);
  CHECK(heatmap_pixel(1.0) == 255);
  CHECK(heatmap_pixel(-1.0) == 0);
  CHECK(heatmap_pixel(1.5) == 255);
  CHECK(heatmap_pixel(-3.0) == 0);

  const Grid g(8);
  const ScalarField theta = from_function(g, [](double, double x2) { return std::cos(x2) * 0.9; });
  std::ostringstream out(std::ios::binary);
  write_heatmap(out, theta);
  const std::string pgm = out.str();
  REQUIRE(pgm.rfind("P5\n8 8\n255\n", 0) == 0);
  const std::string px = pgm.substr(std::string("P5\n8 8\n255\n").size());
  REQUIRE(px.size() == 64);
  // row 0 is x2 = 0 where cos is largest
  CHECK(static_cast<unsigned char>(px[0]) == heatmap_pixel(0.9));
  CHECK(static_cast<unsigned char>(px[4 * 8]) == heatmap_pixel(-0.9));
}
