#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nsch/initial_conditions.hpp"
#include "nsch/spectral.hpp"
#include "oracle/dense_oracle.hpp"

using namespace nsch;

namespace {

constexpr double pi = std::numbers::pi;

GridArray<double> random_values(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GridArray<double> v(n, n);
  for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = 2.0 * unit_double(rng()) - 1.0;
  return v;
}

double max_diff(const ScalarField& a, const ScalarField& b) { return (a.coeffs() - b.coeffs()).abs().maxCoeff(); }

ScalarField cosine(const Grid& g, int k1, int k2, double a = 1.0) {
  return from_function(g, [=](double x1, double x2) { return a * std::cos(k1 * x1 + k2 * x2); });
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(6), ConfigError);
  CHECK_THROWS_AS(Grid(9), ConfigError);
  CHECK_THROWS_AS(Grid(16, 9), ConfigError);
  const Grid g(16);
  CHECK(g.dealias_cut() == 5);
  CHECK(g.wavenumber(8) == 8);
  CHECK(g.wavenumber(9) == -7);
  CHECK(g.index_of(-1) == 15);
}

TEST_CASE("transform examples") {
  const Grid g(16);
  const ScalarField zero = forward_transform(g, GridArray<double>(GridArray<double>::Zero(16, 16)));
  CHECK(zero.coeffs().abs().maxCoeff() == 0.0);

  const ScalarField c = cosine(g, 1, 0);
  CHECK(std::abs(c.at(1, 0) - 0.5) < 1e-15);
  CHECK(std::abs(c.at(-1, 0) - 0.5) < 1e-15);
  ScalarField rest = c;
  rest.at(1, 0) = 0.0;
  rest.at(-1, 0) = 0.0;
  CHECK(rest.coeffs().abs().maxCoeff() < 1e-15);

  GridArray<double> bad = GridArray<double>::Zero(16, 16);
  bad(3, 4) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(forward_transform(g, bad), DataError);
}

TEST_CASE("round trip on every grid size") {
  for (int n = 8; n <= 256; n *= 2) {
    const Grid g(n);
    const GridArray<double> v = random_values(n, n);
    const ScalarField f = forward_transform(g, v);
    CHECK((inverse_transform(f) - v).abs().maxCoeff() <= 1e-12);
    // Hermitian symmetry
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1)
        CHECK(std::abs(f.coeffs()(i1, i2) - std::conj(f.coeffs()(g.conjugate_index(i1), g.conjugate_index(i2)))) ==
              0.0);
    // Parseval
    const double h = 2.0 * pi / n;
    CHECK(std::abs(l2_norm(f) * l2_norm(f) - v.square().sum() * h * h) <= 1e-12 * v.square().sum() * h * h);
  }
}

TEST_CASE("derivative examples") {
  const Grid g(16);
  const ScalarField d = derivative(cosine(g, 1, 0), 0);
  const ScalarField want = from_function(g, [](double x1, double) { return -std::sin(x1); });
  CHECK(max_diff(d, want) < 1e-15);
  CHECK(max_diff(laplacian(cosine(g, 2, 0)), -4.0 * cosine(g, 2, 0)) < 1e-14);
  // sampling noise in high modes is amplified by |k|^4
  CHECK(max_diff(bilaplacian(cosine(g, 1, 1)), 4.0 * cosine(g, 1, 1)) < 1e-11);
  CHECK(max_diff(derivative(cosine(g, 0, 3), 1, 2), -9.0 * cosine(g, 0, 3)) < 1e-13);
  CHECK_THROWS_AS(derivative(cosine(g, 1, 0), 2), PreconditionError);
}

TEST_CASE("bilaplacian matches the dense oracle") {
  const Grid g(8);
  const oracle::DenseSpectralOracle dense(8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GridArray<double> v = random_values(8, 100 + seed);
    CHECK((inverse_transform(bilaplacian(forward_transform(g, v))) - dense.bilaplacian(v)).abs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("inverse laplacian examples") {
  const Grid g(16);
  CHECK(max_diff(inverse_laplacian(cosine(g, 1, 0)), cosine(g, 1, 0)) < 1e-15);
  CHECK(max_diff(inverse_laplacian(cosine(g, 2, 0)), 0.25 * cosine(g, 2, 0)) < 1e-15);
  const ScalarField shifted = from_function(g, [](double x1, double) { return 1.0 + std::cos(x1); });
  try {
    inverse_laplacian(shifted);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("mean-zero") != std::string::npos);
  }
}

TEST_CASE("mean examples") {
  const Grid g(8);
  CHECK(mean(from_function(g, [](double, double) { return 2.5; })) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::abs(mean(cosine(g, 1, 0))) < 1e-16);
  CHECK(mean(from_function(g, [](double x1, double) { return 1.0 + std::cos(x1); })) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("leray projection") {
  const Grid g(16);
  const VectorField grad(from_function(g, [](double x1, double) { return -std::sin(x1); }), ScalarField(g));
  CHECK(max_coefficient(leray_project(grad)) < 1e-16);

  const VectorField shear(from_function(g, [](double, double x2) { return std::cos(x2); }), ScalarField(g));
  const VectorField p = leray_project(shear);
  CHECK(max_diff(p.u1, shear.u1) == 0.0);
  CHECK(max_diff(p.u2, shear.u2) == 0.0);

  const VectorField u(forward_transform(g, random_values(16, 1)), forward_transform(g, random_values(16, 2)));
  const VectorField pu = leray_project(u);
  const VectorField ppu = leray_project(pu);
  CHECK(std::max(max_diff(pu.u1, ppu.u1), max_diff(pu.u2, ppu.u2)) <= 1e-12);
  CHECK(max_divergence(pu) <= 1e-12 * max_coefficient(pu));
  CHECK(is_divergence_free(pu));
  CHECK_FALSE(is_divergence_free(u));
}

TEST_CASE("galerkin cutoff") {
  const Grid g(16);
  const ScalarField c2 = cosine(g, 2, 0);
  CHECK(galerkin_cutoff(c2, 1).coeffs().abs().maxCoeff() <= 1e-15);
  CHECK(std::abs(galerkin_cutoff(c2, 2).at(2, 0) - 0.5) <= 1e-15);
  CHECK(galerkin_cutoff(c2, 2).at(3, 0) == 0.0);
  const ScalarField f = forward_transform(g, random_values(16, 5));
  CHECK(max_diff(galerkin_cutoff(f, 12), f) == 0.0);  // 12 >= 8 sqrt 2
  CHECK(max_diff(galerkin_cutoff(galerkin_cutoff(f, 4), 4), galerkin_cutoff(f, 4)) == 0.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 12; ++n) {
    const double r = sobolev_norm(galerkin_cutoff(f, n) - f, 1.0);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("sobolev norm examples") {
  const Grid g(16);
  CHECK(sobolev_norm(ScalarField(g), 1.0) == 0.0);
  const ScalarField c = cosine(g, 1, 0);
  CHECK(sobolev_norm(c, 0.0) == doctest::Approx(std::sqrt(2.0 * pi * pi)).epsilon(1e-14));
  for (double s : {-1.0, 0.5, 1.0, 2.0, 3.5}) {
    CHECK(sobolev_norm(c, s) == doctest::Approx(2.0 * pi * std::pow(2.0, (s - 1.0) / 2.0)).epsilon(1e-14));
  }
  CHECK(homogeneous_sobolev_norm(cosine(g, 2, 0), -1.0) == doctest::Approx(std::sqrt(2.0 * pi * pi) / 2.0).epsilon(1e-14));
}

TEST_CASE("dealiased products") {
  const Grid g(16);
  const ScalarField c = cosine(g, 1, 0);
  CHECK(dealias_product(c, ScalarField(g)).coeffs().abs().maxCoeff() == 0.0);
  const ScalarField sq = dealias_product(c, c);
  const ScalarField want = from_function(g, [](double x1, double) { return 0.5 + 0.5 * std::cos(2.0 * x1); });
  CHECK(max_diff(sq, want) < 1e-15);

  // Band-limited factors on N = 8 against the exact convolution.
  const Grid g8(8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ScalarField f = random_band_raw(g8, seed, 2);
    const ScalarField h = random_band_raw(g8, seed + 50, 2);
    const oracle::CoeffTable exact = oracle::convolution_product(f.coeffs(), h.coeffs());
    const ScalarField got = dealias_product(f, h);
    for (int i2 = 0; i2 < 8; ++i2)
      for (int i1 = 0; i1 < 8; ++i1) {
        const bool kept = std::max(std::abs(g8.wavenumber(i1)), std::abs(g8.wavenumber(i2))) <= g8.dealias_cut();
        if (kept) CHECK(std::abs(got.coeffs()(i1, i2) - exact(i1, i2)) <= 1e-10);
      }
  }
}

TEST_CASE("oversampling is the inverse of projection") {
  const Grid g(16);
  const ScalarField f = forward_transform(g, random_values(16, 9));
  for (int factor : {1, 2, 3, 4}) {
    CHECK(max_diff(project_samples(g, sample(f, factor)), f) <= 1e-14);
  }
  CHECK(linf_norm(cosine(g, 1, 0, 0.7), 2) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("biharmonic semigroup") {
  const Grid g(16);
  for (double t : {0.0, 1e-3, 0.2, 1.0}) {
    CHECK(max_diff(biharmonic_semigroup(cosine(g, 1, 0), t), std::exp(-t) * cosine(g, 1, 0)) <= 1e-15);
    CHECK(max_diff(biharmonic_semigroup(cosine(g, 2, 0), t), std::exp(-16.0 * t) * cosine(g, 2, 0)) <= 1e-15);
  }
  CHECK_THROWS_AS(biharmonic_semigroup(cosine(g, 1, 0), -1e-3), PreconditionError);

  const ScalarField f = random_band_raw(g, 3, 5);
  CHECK(max_diff(biharmonic_semigroup(biharmonic_semigroup(f, 0.01), 0.02), biharmonic_semigroup(f, 0.03)) <= 1e-12);
  CHECK(mean(biharmonic_semigroup(f + from_function(g, [](double, double) { return 0.3; }), 0.5)) ==
        doctest::Approx(0.3).epsilon(1e-14));
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 1e-1; t > 1e-7; t *= 0.1) {
    const double d = linf_norm(biharmonic_semigroup(f, t) - f, 2);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("strip_nyquist removes only Nyquist rows and columns") {
  const Grid g(8);
  const ScalarField f = forward_transform(g, random_values(8, 4));
  const ScalarField s = strip_nyquist(f);
  for (int i2 = 0; i2 < 8; ++i2)
    for (int i1 = 0; i1 < 8; ++i1) {
      if (i1 == 4 || i2 == 4) CHECK(s.coeffs()(i1, i2) == std::complex<double>(0.0));
      else CHECK(s.coeffs()(i1, i2) == f.coeffs()(i1, i2));
    }
}
