#include "oracle/dense_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap(int k, int n) { return ((k % n) + n) % n; }
int signed_wave(int index, int n) { return index <= n / 2 ? index : index - n; }

Eigen::VectorXcd flatten(const RealGrid& f) {
  const auto n = f.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index j2 = 0; j2 < n; ++j2)
    for (Eigen::Index j1 = 0; j1 < n; ++j1) v(j1 + n * j2) = f(j1, j2);
  return v;
}

CoeffTable unflatten(const Eigen::VectorXcd& v, int n) {
  CoeffTable c(n, n);
  for (int i2 = 0; i2 < n; ++i2)
    for (int i1 = 0; i1 < n; ++i1) c(i1, i2) = v(i1 + n * i2);
  return c;
}

}  // namespace

DenseSpectralOracle::DenseSpectralOracle(int n) : n_(n) {
  if (n < 2 || n > 16 || n % 2 != 0) throw OracleError("dense oracle needs even N <= 16, got " + std::to_string(n));
  const int nn = n * n;
  forward_.resize(nn, nn);
  backward_.resize(nn, nn);
  const double h = 2.0 * kPi / n;
  for (int i2 = 0; i2 < n; ++i2) {
    for (int i1 = 0; i1 < n; ++i1) {
      const double k1 = wavenumber(i1);
      const double k2 = wavenumber(i2);
      for (int j2 = 0; j2 < n; ++j2) {
        for (int j1 = 0; j1 < n; ++j1) {
          const double phase = k1 * h * j1 + k2 * h * j2;
          const std::complex<double> e(std::cos(phase), std::sin(phase));
          forward_(i1 + n * i2, j1 + n * j2) = std::conj(e) / double(nn);
          backward_(j1 + n * j2, i1 + n * i2) = e;
        }
      }
    }
  }
}

CoeffTable DenseSpectralOracle::transform(const RealGrid& f) const {
  if (f.rows() != n_ || f.cols() != n_) throw OracleError("array does not match oracle size");
  return unflatten(forward_ * flatten(f), n_);
}

RealGrid DenseSpectralOracle::inverse(const CoeffTable& c) const {
  if (c.rows() != n_ || c.cols() != n_) throw OracleError("table does not match oracle size");
  Eigen::VectorXcd v(n_ * n_);
  for (int i2 = 0; i2 < n_; ++i2)
    for (int i1 = 0; i1 < n_; ++i1) v(i1 + n_ * i2) = c(i1, i2);
  const Eigen::VectorXcd x = backward_ * v;
  RealGrid out(n_, n_);
  for (int j2 = 0; j2 < n_; ++j2)
    for (int j1 = 0; j1 < n_; ++j1) out(j1, j2) = x(j1 + n_ * j2).real();
  return out;
}

CoeffTable DenseSpectralOracle::spectral_apply(
    const CoeffTable& c, const std::function<std::complex<double>(int, int, bool, bool)>& m) const {
  CoeffTable out(n_, n_);
  for (int i2 = 0; i2 < n_; ++i2)
    for (int i1 = 0; i1 < n_; ++i1)
      out(i1, i2) = c(i1, i2) * m(wavenumber(i1), wavenumber(i2), i1 == n_ / 2, i2 == n_ / 2);
  return out;
}

RealGrid DenseSpectralOracle::derivative(const RealGrid& f, int axis, int order) const {
  if (axis < 0 || axis > 1 || order < 1) throw OracleError("bad derivative request");
  return inverse(spectral_apply(transform(f), [&](int k1, int k2, bool ny1, bool ny2) {
    const int k = axis == 0 ? k1 : k2;
    const bool ny = axis == 0 ? ny1 : ny2;
    if (ny && order % 2 == 1) return std::complex<double>(0.0);
    return std::pow(std::complex<double>(0.0, k), order);
  }));
}

RealGrid DenseSpectralOracle::laplacian(const RealGrid& f) const {
  return inverse(spectral_apply(transform(f), [](int k1, int k2, bool, bool) {
    return std::complex<double>(-double(k1 * k1 + k2 * k2));
  }));
}

RealGrid DenseSpectralOracle::bilaplacian(const RealGrid& f) const {
  return inverse(spectral_apply(transform(f), [](int k1, int k2, bool, bool) {
    const double kk = double(k1 * k1 + k2 * k2);
    return std::complex<double>(kk * kk);
  }));
}

RealGrid DenseSpectralOracle::inverse_laplacian(const RealGrid& f) const {
  const double m = f.mean();
  if (std::abs(m) > 1e-10 * std::max(1.0, f.abs().maxCoeff())) throw OracleError("inverse Laplacian of a field with nonzero mean");
  return inverse(spectral_apply(transform(f), [](int k1, int k2, bool, bool) {
    const int kk = k1 * k1 + k2 * k2;
    return std::complex<double>(kk == 0 ? 0.0 : 1.0 / kk);
  }));
}

std::pair<RealGrid, RealGrid> DenseSpectralOracle::leray(const RealGrid& u1, const RealGrid& u2) const {
  const CoeffTable a = transform(u1);
  const CoeffTable b = transform(u2);
  CoeffTable p = a, q = b;
  for (int i2 = 0; i2 < n_; ++i2) {
    for (int i1 = 0; i1 < n_; ++i1) {
      const double k1 = wavenumber(i1);
      const double k2 = wavenumber(i2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::complex<double> d = (k1 * a(i1, i2) + k2 * b(i1, i2)) / kk;
      p(i1, i2) = a(i1, i2) - k1 * d;
      q(i1, i2) = b(i1, i2) - k2 * d;
    }
  }
  return {inverse(p), inverse(q)};
}

std::complex<double> DenseSpectralOracle::evaluate(const CoeffTable& c, double x1, double x2) const {
  std::complex<double> acc(0.0);
  for (int i2 = 0; i2 < n_; ++i2) {
    for (int i1 = 0; i1 < n_; ++i1) {
      const int k1 = wavenumber(i1);
      const int k2 = wavenumber(i2);
      const bool ny1 = i1 == n_ / 2;
      const bool ny2 = i2 == n_ / 2;
      // A Nyquist term contributes cos(N/2 x) rather than e^{i N/2 x}.
      const std::complex<double> e1 = ny1 ? std::complex<double>(std::cos(k1 * x1)) : std::polar(1.0, k1 * x1);
      const std::complex<double> e2 = ny2 ? std::complex<double>(std::cos(k2 * x2)) : std::polar(1.0, k2 * x2);
      acc += c(i1, i2) * e1 * e2;
    }
  }
  return acc;
}

CoeffTable definitional_transform(const RealGrid& f) {
  const int n = static_cast<int>(f.rows());
  if (f.cols() != n) throw OracleError("array must be square");
  const double h = 2.0 * kPi / n;
  CoeffTable c(n, n);
  for (int i2 = 0; i2 < n; ++i2) {
    for (int i1 = 0; i1 < n; ++i1) {
      const int k1 = signed_wave(i1, n);
      const int k2 = signed_wave(i2, n);
      std::complex<double> acc(0.0);
      for (int j2 = 0; j2 < n; ++j2)
        for (int j1 = 0; j1 < n; ++j1) acc += f(j1, j2) * std::polar(1.0, -(k1 * h * j1 + k2 * h * j2));
      // Quadrature weight h^2 over (2pi)^2.
      c(i1, i2) = acc * (h * h) / (4.0 * kPi * kPi);
    }
  }
  return c;
}

CoeffTable convolution_product(const CoeffTable& a, const CoeffTable& b) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || b.rows() != n || b.cols() != n) throw OracleError("tables must share one square size");
  const int h = n / 2;
  for (int i = 0; i < n; ++i) {
    if (std::abs(a(h, i)) + std::abs(a(i, h)) + std::abs(b(h, i)) + std::abs(b(i, h)) != 0.0) {
      throw OracleError("convolution_product needs tables without Nyquist modes");
    }
  }
  CoeffTable out = CoeffTable::Zero(n, n);
  for (int p2 = -h + 1; p2 < h; ++p2) {
    for (int p1 = -h + 1; p1 < h; ++p1) {
      const std::complex<double> ap = a(wrap(p1, n), wrap(p2, n));
      if (ap == 0.0) continue;
      for (int q2 = -h + 1; q2 < h; ++q2) {
        for (int q1 = -h + 1; q1 < h; ++q1) {
          const int k1 = p1 + q1;
          const int k2 = p2 + q2;
          if (k1 <= -h || k1 > h || k2 <= -h || k2 > h) continue;
          out(wrap(k1, n), wrap(k2, n)) += ap * b(wrap(q1, n), wrap(q2, n));
        }
      }
    }
  }
  return out;
}

double quadrature(const std::function<double(double, double)>& integrand, int n, int oversample) {
  if (oversample != 1 && oversample != 2 && oversample != 4 && oversample != 8) {
    throw OracleError("quadrature oversample must be 1, 2, 4 or 8");
  }
  const int m = n * oversample;
  const double h = 2.0 * kPi / m;
  double acc = 0.0;
  for (int j2 = 0; j2 < m; ++j2)
    for (int j1 = 0; j1 < m; ++j1) acc += integrand(h * j1, h * j2);
  return acc * h * h;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw OracleError("bisect: no sign change on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
