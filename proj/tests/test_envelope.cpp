#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nsch/envelope.hpp"
#include "oracle/dense_oracle.hpp"

using namespace nsch;

namespace {

const PotentialParams p(1.0, 2.0);

ScalarField cos1(const Grid& g, double a, int k = 1) {
  return from_function(g, [=](double x1, double) { return a * std::cos(k * x1); });
}

double max_diff(const ScalarField& a, const ScalarField& b) { return (a.coeffs() - b.coeffs()).abs().maxCoeff(); }

}  // namespace

TEST_CASE("h~ examples") {
  const Grid g(16);
  const SimState s(cos1(g, 0.1), VectorField(g));
  CHECK(max_diff(compute_h_tilde(s, cos1(g, 1.0), p), cos1(g, -1.0)) <= 1e-15);
  CHECK(max_diff(compute_h_tilde(s, cos1(g, 1.0, 2), p), cos1(g, -0.25, 2)) <= 1e-15);

  // zero mode carries m(phi(theta))
  const SimState shifted(cos1(g, 0.1) + from_function(g, [](double, double) { return 0.2; }), VectorField(g));
  const ScalarField h = compute_h_tilde(shifted, ScalarField(g), p);
  CHECK(h.at(0, 0).real() == doctest::Approx(mean(phi_field(shifted.theta, p, ClampPolicy::clamp, nullptr))));
  CHECK(h.at(0, 0).real() < 0.0);  // phi(0.2) < 0

  const ScalarField bad = from_function(g, [](double, double) { return 1.0; });
  CHECK_THROWS_AS(compute_h_tilde(s, bad, p), PreconditionError);
}

TEST_CASE("h~ includes transport") {
  const Grid g(16);
  // u = (sin x2, 0), theta = 0.1 cos x1: div(u theta) = -0.1 sin x1 sin x2
  const VectorField u(from_function(g, [](double, double x2) { return std::sin(x2); }), ScalarField(g));
  const SimState s(cos1(g, 0.1), u);
  const ScalarField h = compute_h_tilde(s, ScalarField(g), p);
  const ScalarField want = from_function(g, [](double x1, double x2) { return 0.05 * std::sin(x1) * std::sin(x2); });
  CHECK(max_diff(h, want) <= 1e-15);
}

TEST_CASE("ode_step examples") {
  CHECK(ode_step(0.0, 0.0, 0.1, 0.01, p) == 0.0);
  // stationary point phi(y*) = h is reproduced
  const double ystar = 0.6;
  const double h = phi(ystar, p);
  CHECK(ode_step(ystar, h, 0.1, 0.01, p) == doctest::Approx(ystar).epsilon(1e-13));

  for (double y0 : {-0.9, -0.2, 0.0, 0.5, 0.99}) {
    for (double hh : {-3.0, 0.0, 0.7, 5.0}) {
      const double eps = 0.1, dt = 0.02;
      const double y = ode_step(y0, hh, eps, dt, p);
      auto F = [&](double v) { return eps / dt * (v - y0) + p.alpha0() * std::atanh(v) - p.alpha() * v - hh; };
      const double ref = oracle::bisect(F, -1.0 + 1e-15, 1.0 - 1e-15, 1e-14);
      CHECK(std::abs(y - ref) <= 1e-10);
    }
  }

  CHECK_THROWS_AS(ode_step(0.0, 0.0, 0.01, 0.01, p), PreconditionError);
  CHECK_THROWS_AS(ode_step(1.0, 0.0, 0.1, 0.01, p), PreconditionError);
  CHECK_THROWS_AS(ode_step(0.0, -100.0, 0.1, 0.01, p), SingularityError);
}

TEST_CASE("step map is monotone") {
  double prev = -2.0;
  for (int i = -19; i <= 19; ++i) {
    const double y = ode_step(i / 20.0, 0.3, 0.1, 0.02, p);
    CHECK(y > prev);
    prev = y;
  }
  prev = -2.0;
  for (int i = -10; i <= 10; ++i) {
    const double y = ode_step(0.1, i * 0.5, 0.1, 0.02, p);
    CHECK(y > prev);
    prev = y;
  }
}

TEST_CASE("ode_advance sub-steps when eps/dt is too small") {
  // relaxes toward the stable zero of phi near 0.9575
  const double y = ode_advance(0.5, 0.0, 0.01, 0.1, p);
  CHECK(y > 0.9);
  CHECK(std::abs(phi(y, p)) < 1e-6);
  CHECK(ode_advance(0.3, 0.0, 0.1, 0.01, p) == ode_step(0.3, 0.0, 0.1, 0.01, p));
}

TEST_CASE("envelope state and check") {
  const Grid g(16);
  const ScalarField theta0 = cos1(g, 0.5);
  EnvelopeState env(theta0, 0.1, 2);
  CHECK(env.y_plus() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(env.y_minus() == -env.y_plus());
  CHECK(envelope_check(theta0, env).passed);

  const EnvelopeReport bad = envelope_check(cos1(g, 0.6), env);
  CHECK_FALSE(bad.passed);
  CHECK(bad.witness == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(bad.theta_min == doctest::Approx(-0.6).epsilon(1e-12));

  env.advance(0.01, 0.0, p);
  env.advance(0.02, 0.0, p);
  CHECK(env.history().size() == 3);
  CHECK(env.y_plus() > 0.5);
  CHECK(env.y_minus() == doctest::Approx(-env.y_plus()).epsilon(1e-14));
  CHECK(env.phi_sq_integral_plus() > 0.0);
  CHECK_THROWS_AS(env.advance(0.02, 0.0, p), PreconditionError);
  CHECK_THROWS_AS(EnvelopeState(cos1(g, 1.0), 0.1, 2), PreconditionError);
  CHECK_THROWS_AS(EnvelopeState(theta0, 0.0), PreconditionError);
}

TEST_CASE("ODE energy identity residual") {
  CHECK(ode_energy_identity_residual({0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0.1, p) == 0.0);
  const double ystar = -0.4;
  const double h = phi(ystar, p);
  const double r = ode_energy_identity_residual({0.0, 0.3, 1.0}, {ystar, ystar, ystar}, {h, h, h}, 0.1, p);
  CHECK(r <= 1e-15);
  CHECK_THROWS_AS(ode_energy_identity_residual({0.0, 1.0}, {0.0}, {0.0, 0.0}, 0.1, p), PreconditionError);

  // trajectories from the implicit scheme converge to zero residual
  auto residual = [](double dt) {
    std::vector<double> t{0.0}, y{0.3}, h{0.0};
    const double eps = 0.1;
    for (int i = 1; i * dt <= 1.0 + 1e-12; ++i) {
      const double ti = i * dt;
      const double hi = 1.5 * std::sin(2.0 * ti);
      y.push_back(ode_step(y.back(), hi, eps, dt, p));
      t.push_back(ti);
      h.push_back(hi);
    }
    h[0] = 0.0;
    return ode_energy_identity_residual(t, y, h, eps, p);
  };
  CHECK(residual(5e-3) < residual(1e-2));
}
