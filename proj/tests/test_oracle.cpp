#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle/dense_oracle.hpp"

using namespace oracle;

namespace {

constexpr double pi = std::numbers::pi;

RealGrid grid_of(int n, const std::function<double(double, double)>& f) {
  RealGrid v(n, n);
  for (int j2 = 0; j2 < n; ++j2)
    for (int j1 = 0; j1 < n; ++j1) v(j1, j2) = f(2.0 * pi * j1 / n, 2.0 * pi * j2 / n);
  return v;
}

RealGrid random_grid(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealGrid v(n, n);
  for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = u(rng);
  return v;
}

// Phi for alpha0 = 1, alpha = 2
double Phi(double s) { return 0.5 * ((1 + s) * std::log1p(s) + (1 - s) * std::log1p(-s)) - s * s; }

}  // namespace

TEST_CASE("size guard") {
  CHECK_THROWS_AS(DenseSpectralOracle(18), OracleError);
  CHECK_THROWS_AS(DenseSpectralOracle(7), OracleError);
  CHECK_NOTHROW(DenseSpectralOracle(4));
}

TEST_CASE("cosine coefficient table") {
  const DenseSpectralOracle o(8);
  const CoeffTable c = o.transform(grid_of(8, [](double x1, double) { return std::cos(x1); }));
  for (int i2 = 0; i2 < 8; ++i2)
    for (int i1 = 0; i1 < 8; ++i1) {
      const double want = (i2 == 0 && (i1 == 1 || i1 == 7)) ? 0.5 : 0.0;
      CHECK(std::abs(c(i1, i2) - want) <= 1e-15);
    }
  CHECK((definitional_transform(grid_of(8, [](double x1, double) { return std::cos(x1); })) - c).abs().maxCoeff() <=
        1e-15);
}

TEST_CASE("linearity and inversion") {
  const DenseSpectralOracle o(8);
  const RealGrid a = random_grid(8, 1), b = random_grid(8, 2);
  const CoeffTable lhs = o.transform(RealGrid(2.0 * a - 3.0 * b));
  const CoeffTable rhs = 2.0 * o.transform(a) - 3.0 * o.transform(b);
  CHECK((lhs - rhs).abs().maxCoeff() <= 1e-14);
  CHECK((o.inverse(o.transform(a)) - a).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("operators on trigonometric fields") {
  const DenseSpectralOracle o(8);
  const RealGrid c = grid_of(8, [](double x1, double x2) { return std::cos(x1 + 2 * x2); });
  CHECK((o.laplacian(c) + 5.0 * c).abs().maxCoeff() <= 1e-13);
  CHECK((o.bilaplacian(c) - 25.0 * c).abs().maxCoeff() <= 1e-12);
  CHECK((o.inverse_laplacian(c) - c / 5.0).abs().maxCoeff() <= 1e-14);
  const RealGrid d = o.derivative(c, 1);
  CHECK((d + 2.0 * grid_of(8, [](double x1, double x2) { return std::sin(x1 + 2 * x2); })).abs().maxCoeff() <= 1e-13);
  // Nyquist dropped by odd derivatives
  const RealGrid ny = grid_of(8, [](double x1, double) { return std::cos(4 * x1); });
  CHECK(o.derivative(ny, 0).abs().maxCoeff() <= 1e-14);
  CHECK((o.derivative(ny, 0, 2) + 16.0 * ny).abs().maxCoeff() <= 1e-12);
  const auto [p1, p2] = o.leray(o.derivative(c, 0), o.derivative(c, 1));
  CHECK(std::max(p1.abs().maxCoeff(), p2.abs().maxCoeff()) <= 1e-13);
  CHECK(std::abs(o.evaluate(o.transform(c), 0.3, 0.7) - std::cos(0.3 + 1.4)) <= 1e-14);
}

TEST_CASE("convolution product") {
  const DenseSpectralOracle o(8);
  CoeffTable c = o.transform(grid_of(8, [](double x1, double) { return std::cos(x1); }));
  c.row(4).setZero();
  c.col(4).setZero();
  const CoeffTable sq = convolution_product(c, c);
  CHECK(std::abs(sq(0, 0) - 0.5) <= 1e-15);
  CHECK(std::abs(sq(2, 0) - 0.25) <= 1e-15);
  CHECK(std::abs(sq(6, 0) - 0.25) <= 1e-15);
  const CoeffTable ny = o.transform(grid_of(8, [](double x1, double) { return std::cos(4 * x1); }));
  CHECK_THROWS_AS(convolution_product(ny, c), OracleError);
}

TEST_CASE("quadrature") {
  CHECK(quadrature([](double, double) { return 1.0; }, 8, 1) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
  CHECK(quadrature([](double x1, double) { return std::cos(x1) * std::cos(x1); }, 8, 2) ==
        doctest::Approx(2 * pi * pi).epsilon(1e-14));
  const auto f = [](double x1, double) { return Phi(0.5 * std::cos(x1)); };
  CHECK(std::abs(quadrature(f, 16, 4) - quadrature(f, 16, 8)) <= 1e-9);
  CHECK_THROWS_AS(quadrature(f, 16, 3), OracleError);
}

TEST_CASE("bisect") {
  CHECK(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(bisect([](double x) { return std::atanh(x) - 0.5; }, -1 + 1e-15, 1 - 1e-15, 1e-15) ==
        doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), OracleError);
}
