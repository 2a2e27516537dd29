#pragma once

// Brute-force references for the test suite. Nothing here calls into the
// FFT-based core: transforms are explicit N^2 x N^2 DFT matrices, point
// values come from direct series summation and products from exact
// discrete convolution.
//
// Layout conventions match the core so results compare entrywise: physical
// arrays are indexed (j1, j2) at x = 2pi (j1, j2) / N, coefficient tables
// hold the wavevector with components -N/2+1 .. N/2 in FFT order. Odd
// derivatives treat the Nyquist wavenumber as zero.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <functional>
#include <utility>

namespace oracle {

using RealGrid = Eigen::ArrayXXd;
using CoeffTable = Eigen::ArrayXXcd;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DenseSpectralOracle {
 public:
  /// Even n in [2, 16].
  explicit DenseSpectralOracle(int n);

  int size() const { return n_; }
  int wavenumber(int index) const { return index <= n_ / 2 ? index : index - n_; }

  /// f^(k) = N^-2 sum_x f(x) e^{-i k.x} by one dense matrix-vector product.
  CoeffTable transform(const RealGrid& f) const;
  /// Real part of sum_k c_k e^{i k.x} at the grid nodes, dense.
  RealGrid inverse(const CoeffTable& c) const;

  RealGrid derivative(const RealGrid& f, int axis, int order = 1) const;
  RealGrid laplacian(const RealGrid& f) const;
  RealGrid bilaplacian(const RealGrid& f) const;
  /// Throws when the mean of f exceeds 1e-10 relative to its size.
  RealGrid inverse_laplacian(const RealGrid& f) const;
  std::pair<RealGrid, RealGrid> leray(const RealGrid& u1, const RealGrid& u2) const;

  /// sum_k c_k e^{i k.x} at an arbitrary point, Nyquist terms split between +-N/2.
  std::complex<double> evaluate(const CoeffTable& c, double x1, double x2) const;

 private:
  CoeffTable spectral_apply(const CoeffTable& c, const std::function<std::complex<double>(int, int, bool, bool)>& m) const;

  int n_;
  Eigen::MatrixXcd forward_;  ///< row (i1 + N i2), column (j1 + N j2)
  Eigen::MatrixXcd backward_;
};

/// (2pi)^-2 \int f e^{-ik.x} evaluated as the literal double sum, no matrix.
CoeffTable definitional_transform(const RealGrid& f);

/// Coefficients of the product of two trigonometric polynomials with
/// coefficient tables a, b (no Nyquist modes), kept on the n-grid.
CoeffTable convolution_product(const CoeffTable& a, const CoeffTable& b);

/// Collocation sum of integrand(x1, x2) on the (oversample N)^2 grid times
/// the cell area. oversample in {1, 2, 4, 8}.
double quadrature(const std::function<double(double, double)>& integrand, int n, int oversample);

/// Root of a monotone function on [lo, hi] by plain bisection to width tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace oracle
