#pragma once

// Fourier representation of real periodic fields on [0, 2pi)^2.
//
// A field is stored by its Fourier coefficients
//   f^(n) = (2pi)^-2 \int f(x) e^{-i n.x} dx,   n in {-N/2+1, ..., N/2}^2,
// indexed in FFT order: array entry (i1, i2) holds the wavevector
// (wavenumber(i1), wavenumber(i2)). Physical samples are stored the same
// way, entry (j1, j2) being the value at x = (2pi j1 / N, 2pi j2 / N).
//
// Everything here is templated on the real scalar type; the rest of the
// library instantiates it with double.

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>

#include "nsch/errors.hpp"

namespace nsch {

template <typename Scalar>
using CoeffArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using GridArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Uniform N x N collocation grid on the 2-torus of side 2pi.
class Grid {
 public:
  /// `dealias_cut < 0` selects the 2/3-rule default floor(N/3).
  explicit Grid(int n, int dealias_cut = -1) : n_(n), cut_(dealias_cut < 0 ? n / 3 : dealias_cut) {
    if (n < 8 || n % 2 != 0) {
      throw ConfigError("grid size N must be even and >= 8, got " + std::to_string(n));
    }
    if (cut_ > n / 2) {
      throw ConfigError("dealias_cut must not exceed N/2");
    }
  }

  int size() const { return n_; }
  int dealias_cut() const { return cut_; }

  int wavenumber(int index) const { return index <= n_ / 2 ? index : index - n_; }
  int index_of(int k) const { return ((k % n_) + n_) % n_; }
  bool is_nyquist(int index) const { return index == n_ / 2; }

  /// Index of the wavevector -n for the entry holding n.
  int conjugate_index(int index) const { return (n_ - index) % n_; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_ && a.cut_ == b.cut_; }

 private:
  int n_;
  int cut_;
};

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DataError("fields live on different grids");
}

/// Real scalar field held as Fourier coefficients.
template <typename Scalar>
class ScalarFieldT {
 public:
  using Complex = std::complex<Scalar>;

  explicit ScalarFieldT(const Grid& grid)
      : grid_(grid), coeffs_(CoeffArray<Scalar>::Zero(grid.size(), grid.size())) {}

  ScalarFieldT(const Grid& grid, CoeffArray<Scalar> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != grid.size() || coeffs_.cols() != grid.size()) {
      throw DataError("coefficient array does not match grid size");
    }
  }

  static ScalarFieldT zero(const Grid& grid) { return ScalarFieldT(grid); }

  const Grid& grid() const { return grid_; }
  CoeffArray<Scalar>& coeffs() { return coeffs_; }
  const CoeffArray<Scalar>& coeffs() const { return coeffs_; }

  /// Coefficient of the wavevector (k1, k2).
  Complex& at(int k1, int k2) { return coeffs_(grid_.index_of(k1), grid_.index_of(k2)); }
  const Complex& at(int k1, int k2) const { return coeffs_(grid_.index_of(k1), grid_.index_of(k2)); }

  ScalarFieldT& operator+=(const ScalarFieldT& o) {
    require_same_grid(grid_, o.grid_);
    coeffs_ += o.coeffs_;
    return *this;
  }
  ScalarFieldT& operator-=(const ScalarFieldT& o) {
    require_same_grid(grid_, o.grid_);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  ScalarFieldT& operator*=(Scalar a) {
    coeffs_ *= a;
    return *this;
  }

  friend ScalarFieldT operator+(ScalarFieldT a, const ScalarFieldT& b) { return a += b; }
  friend ScalarFieldT operator-(ScalarFieldT a, const ScalarFieldT& b) { return a -= b; }
  friend ScalarFieldT operator*(Scalar s, ScalarFieldT a) { return a *= s; }
  friend ScalarFieldT operator*(ScalarFieldT a, Scalar s) { return a *= s; }
  friend ScalarFieldT operator-(ScalarFieldT a) {
    a.coeffs_ = -a.coeffs_;
    return a;
  }

 private:
  Grid grid_;
  CoeffArray<Scalar> coeffs_;
};

/// Two-component vector field (u1, u2) on one grid.
template <typename Scalar>
struct VectorFieldT {
  ScalarFieldT<Scalar> u1;
  ScalarFieldT<Scalar> u2;

  explicit VectorFieldT(const Grid& grid) : u1(grid), u2(grid) {}
  VectorFieldT(ScalarFieldT<Scalar> a, ScalarFieldT<Scalar> b) : u1(std::move(a)), u2(std::move(b)) {
    require_same_grid(u1.grid(), u2.grid());
  }

  const Grid& grid() const { return u1.grid(); }
  ScalarFieldT<Scalar>& operator[](int axis) { return axis == 0 ? u1 : u2; }
  const ScalarFieldT<Scalar>& operator[](int axis) const { return axis == 0 ? u1 : u2; }

  VectorFieldT& operator+=(const VectorFieldT& o) {
    u1 += o.u1;
    u2 += o.u2;
    return *this;
  }
  VectorFieldT& operator-=(const VectorFieldT& o) {
    u1 -= o.u1;
    u2 -= o.u2;
    return *this;
  }
  VectorFieldT& operator*=(Scalar a) {
    u1 *= a;
    u2 *= a;
    return *this;
  }
  friend VectorFieldT operator+(VectorFieldT a, const VectorFieldT& b) { return a += b; }
  friend VectorFieldT operator-(VectorFieldT a, const VectorFieldT& b) { return a -= b; }
  friend VectorFieldT operator*(Scalar s, VectorFieldT a) { return a *= s; }
};

using ScalarField = ScalarFieldT<double>;
using VectorField = VectorFieldT<double>;

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine = [] {
    Eigen::FFT<Scalar> e;
    e.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return e;
  }();
  return engine;
}

/// Unscaled 2-D DFT in place. Forward uses e^{-i}, inverse e^{+i}.
template <typename Scalar>
void fft2(CoeffArray<Scalar>& a, bool inverse) {
  using Vec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  auto& fft = fft_engine<Scalar>();
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Vec in(rows), out(rows);
  for (Eigen::Index c = 0; c < cols; ++c) {
    in = a.col(c).matrix();
    if (inverse) fft.inv(out, in); else fft.fwd(out, in);
    a.col(c) = out.array();
  }
  in.resize(cols);
  out.resize(cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    in = a.row(r).transpose().matrix();
    if (inverse) fft.inv(out, in); else fft.fwd(out, in);
    a.row(r) = out.transpose().array();
  }
}

/// Replaces c(n) by (c(n) + conj(c(-n)))/2 so the field is exactly real.
template <typename Scalar>
void hermitian_symmetrize(const Grid& g, CoeffArray<Scalar>& c) {
  const int n = g.size();
  CoeffArray<Scalar> out(n, n);
  for (int i2 = 0; i2 < n; ++i2) {
    const int j2 = g.conjugate_index(i2);
    for (int i1 = 0; i1 < n; ++i1) {
      const int j1 = g.conjugate_index(i1);
      out(i1, i2) = (c(i1, i2) + std::conj(c(j1, j2))) * Scalar(0.5);
    }
  }
  c = std::move(out);
}

inline int fine_index(int k, int m) { return ((k % m) + m) % m; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Transforms

/// Point values on the collocation grid -> Fourier coefficients.
template <typename Scalar>
ScalarFieldT<Scalar> forward_transform(const Grid& grid, const GridArray<Scalar>& values) {
  const int n = grid.size();
  if (values.rows() != n || values.cols() != n) {
    throw DataError("sample array is " + std::to_string(values.rows()) + "x" + std::to_string(values.cols()) +
                    ", grid expects " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!values.allFinite()) throw DataError("non-finite sample value in forward transform");
  CoeffArray<Scalar> c = values.template cast<std::complex<Scalar>>();
  detail::fft2(c, false);
  c /= Scalar(n) * Scalar(n);
  detail::hermitian_symmetrize(grid, c);
  return ScalarFieldT<Scalar>(grid, std::move(c));
}

/// Fourier coefficients -> point values on the collocation grid.
template <typename Scalar>
GridArray<Scalar> inverse_transform(const ScalarFieldT<Scalar>& f) {
  CoeffArray<Scalar> c = f.coeffs();
  detail::fft2(c, true);
  return c.real();
}

/// Samples `fn(x1, x2)` on the grid and transforms.
template <typename Scalar = double, typename Fn>
ScalarFieldT<Scalar> from_function(const Grid& grid, Fn&& fn) {
  const int n = grid.size();
  const Scalar h = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n);
  GridArray<Scalar> v(n, n);
  for (int j2 = 0; j2 < n; ++j2)
    for (int j1 = 0; j1 < n; ++j1) v(j1, j2) = fn(h * Scalar(j1), h * Scalar(j2));
  return forward_transform(grid, v);
}

/// Evaluates the trigonometric interpolant on a (factor*N)^2 grid.
/// Nyquist modes are split symmetrically so the result is real.
template <typename Scalar>
GridArray<Scalar> sample(const ScalarFieldT<Scalar>& f, int factor) {
  if (factor < 1) throw PreconditionError("oversampling factor must be >= 1");
  if (factor == 1) return inverse_transform(f);
  const Grid& g = f.grid();
  const int n = g.size();
  const int m = factor * n;
  CoeffArray<Scalar> fine = CoeffArray<Scalar>::Zero(m, m);
  for (int i2 = 0; i2 < n; ++i2) {
    const int k2 = g.wavenumber(i2);
    const bool ny2 = g.is_nyquist(i2);
    for (int i1 = 0; i1 < n; ++i1) {
      const int k1 = g.wavenumber(i1);
      const bool ny1 = g.is_nyquist(i1);
      std::complex<Scalar> c = f.coeffs()(i1, i2);
      if (ny1) c *= Scalar(0.5);
      if (ny2) c *= Scalar(0.5);
      for (int s1 = 0; s1 < (ny1 ? 2 : 1); ++s1) {
        for (int s2 = 0; s2 < (ny2 ? 2 : 1); ++s2) {
          const int q1 = s1 ? -k1 : k1;
          const int q2 = s2 ? -k2 : k2;
          fine(detail::fine_index(q1, m), detail::fine_index(q2, m)) += c;
        }
      }
    }
  }
  detail::fft2(fine, true);
  return fine.real();
}

/// Transforms samples taken on a (factor*N)^2 grid and keeps the modes the
/// target grid can represent. Inverse of `sample` on band-limited fields.
template <typename Scalar>
ScalarFieldT<Scalar> project_samples(const Grid& target, const GridArray<Scalar>& fine_values) {
  const int n = target.size();
  const int m = static_cast<int>(fine_values.rows());
  if (fine_values.cols() != m || m % n != 0) throw DataError("fine sample array is not a multiple of the grid");
  if (m == n) return forward_transform(target, fine_values);
  if (!fine_values.allFinite()) throw DataError("non-finite sample value in forward transform");
  CoeffArray<Scalar> fine = fine_values.template cast<std::complex<Scalar>>();
  detail::fft2(fine, false);
  fine /= Scalar(m) * Scalar(m);
  CoeffArray<Scalar> c = CoeffArray<Scalar>::Zero(n, n);
  for (int i2 = 0; i2 < n; ++i2) {
    const int k2 = target.wavenumber(i2);
    const bool ny2 = target.is_nyquist(i2);
    for (int i1 = 0; i1 < n; ++i1) {
      const int k1 = target.wavenumber(i1);
      const bool ny1 = target.is_nyquist(i1);
      std::complex<Scalar> acc(0);
      for (int s1 = 0; s1 < (ny1 ? 2 : 1); ++s1)
        for (int s2 = 0; s2 < (ny2 ? 2 : 1); ++s2)
          acc += fine(detail::fine_index(s1 ? -k1 : k1, m), detail::fine_index(s2 ? -k2 : k2, m));
      c(i1, i2) = acc;
    }
  }
  detail::hermitian_symmetrize(target, c);
  return ScalarFieldT<Scalar>(target, std::move(c));
}

// ---------------------------------------------------------------------------
// Fourier multipliers

/// Multiplies coefficient (i1, i2) by `m(k1, k2, nyquist1, nyquist2)`.
template <typename Scalar, typename Multiplier>
ScalarFieldT<Scalar> apply_multiplier(const ScalarFieldT<Scalar>& f, Multiplier&& mult) {
  const Grid& g = f.grid();
  const int n = g.size();
  ScalarFieldT<Scalar> out(g);
  for (int i2 = 0; i2 < n; ++i2)
    for (int i1 = 0; i1 < n; ++i1)
      out.coeffs()(i1, i2) =
          f.coeffs()(i1, i2) * mult(g.wavenumber(i1), g.wavenumber(i2), g.is_nyquist(i1), g.is_nyquist(i2));
  return out;
}

/// (d/dx_axis)^order. For odd orders the Nyquist wavenumber is treated as 0:
/// the derivative of the grid's cos(N x / 2) mode vanishes at every node.
template <typename Scalar>
ScalarFieldT<Scalar> derivative(const ScalarFieldT<Scalar>& f, int axis, int order = 1) {
  if (order < 1) throw PreconditionError("derivative order must be >= 1");
  if (axis != 0 && axis != 1) throw PreconditionError("axis must be 0 or 1");
  using C = std::complex<Scalar>;
  return apply_multiplier(f, [&](int k1, int k2, bool ny1, bool ny2) -> C {
    const int k = axis == 0 ? k1 : k2;
    const bool ny = axis == 0 ? ny1 : ny2;
    if (ny && order % 2 == 1) return C(0);
    C ik(0, Scalar(k));
    C r(1);
    for (int p = 0; p < order; ++p) r *= ik;
    return r;
  });
}

template <typename Scalar>
VectorFieldT<Scalar> gradient(const ScalarFieldT<Scalar>& f) {
  return VectorFieldT<Scalar>(derivative(f, 0), derivative(f, 1));
}

template <typename Scalar>
ScalarFieldT<Scalar> divergence(const VectorFieldT<Scalar>& u) {
  return derivative(u.u1, 0) + derivative(u.u2, 1);
}

template <typename Scalar>
ScalarFieldT<Scalar> laplacian(const ScalarFieldT<Scalar>& f) {
  return apply_multiplier(f, [](int k1, int k2, bool, bool) { return Scalar(-(k1 * k1 + k2 * k2)); });
}

template <typename Scalar>
ScalarFieldT<Scalar> bilaplacian(const ScalarFieldT<Scalar>& f) {
  return apply_multiplier(f, [](int k1, int k2, bool, bool) {
    const Scalar k2n = Scalar(k1 * k1 + k2 * k2);
    return k2n * k2n;
  });
}

/// Zero mode f^(0). Real by construction for symmetrized fields.
template <typename Scalar>
Scalar mean(const ScalarFieldT<Scalar>& f) {
  const auto c = f.coeffs()(0, 0);
  if (std::abs(c.imag()) > Scalar(1e-12) * std::max(Scalar(1), std::abs(c.real()))) {
    throw DataError("zero mode has a non-negligible imaginary part");
  }
  return c.real();
}

template <typename Scalar>
Scalar l2_norm(const ScalarFieldT<Scalar>& f) {
  const Scalar area = Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  return std::sqrt(area * f.coeffs().abs2().sum());
}

template <typename Scalar>
Scalar l2_norm(const VectorFieldT<Scalar>& u) {
  const Scalar a = l2_norm(u.u1);
  const Scalar b = l2_norm(u.u2);
  return std::sqrt(a * a + b * b);
}

/// (f, g)_{L^2} from coefficients.
template <typename Scalar>
Scalar l2_inner(const ScalarFieldT<Scalar>& f, const ScalarFieldT<Scalar>& g) {
  require_same_grid(f.grid(), g.grid());
  const Scalar area = Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  return area * (f.coeffs() * g.coeffs().conjugate()).real().sum();
}

/// (-Delta)^{-1} on mean-zero fields.
template <typename Scalar>
ScalarFieldT<Scalar> inverse_laplacian(const ScalarFieldT<Scalar>& f) {
  const Scalar m = mean(f);
  if (std::abs(m) > Scalar(1e-10) * l2_norm(f)) {
    std::ostringstream os;
    os.precision(17);
    os << "inverse_laplacian requires a mean-zero field, got mean " << m;
    throw PreconditionError(os.str());
  }
  return apply_multiplier(f, [](int k1, int k2, bool, bool) {
    const int k2n = k1 * k1 + k2 * k2;
    return k2n == 0 ? Scalar(0) : Scalar(1) / Scalar(k2n);
  });
}

/// Leray projection u - (n.u) n / |n|^2, zero mode untouched.
template <typename Scalar>
VectorFieldT<Scalar> leray_project(const VectorFieldT<Scalar>& u) {
  const Grid& g = u.grid();
  const int n = g.size();
  VectorFieldT<Scalar> out(g);
  for (int i2 = 0; i2 < n; ++i2) {
    const Scalar k2 = Scalar(g.wavenumber(i2));
    for (int i1 = 0; i1 < n; ++i1) {
      const Scalar k1 = Scalar(g.wavenumber(i1));
      const auto a = u.u1.coeffs()(i1, i2);
      const auto b = u.u2.coeffs()(i1, i2);
      const Scalar kk = k1 * k1 + k2 * k2;
      if (kk == Scalar(0)) {
        out.u1.coeffs()(i1, i2) = a;
        out.u2.coeffs()(i1, i2) = b;
        continue;
      }
      const auto dot = (k1 * a + k2 * b) / kk;
      out.u1.coeffs()(i1, i2) = a - dot * k1;
      out.u2.coeffs()(i1, i2) = b - dot * k2;
    }
  }
  return out;
}

/// max_n |n . u^(n)|, the spectral divergence size.
template <typename Scalar>
Scalar max_divergence(const VectorFieldT<Scalar>& u) {
  const Grid& g = u.grid();
  const int n = g.size();
  Scalar worst(0);
  for (int i2 = 0; i2 < n; ++i2)
    for (int i1 = 0; i1 < n; ++i1)
      worst = std::max(worst, std::abs(Scalar(g.wavenumber(i1)) * u.u1.coeffs()(i1, i2) +
                                       Scalar(g.wavenumber(i2)) * u.u2.coeffs()(i1, i2)));
  return worst;
}

template <typename Scalar>
Scalar max_coefficient(const VectorFieldT<Scalar>& u) {
  return std::max(u.u1.coeffs().abs().maxCoeff(), u.u2.coeffs().abs().maxCoeff());
}

/// Divergence-free in the sense max|n.u^| <= 1e-10 max|u^| (relative tolerance `rel`).
template <typename Scalar>
bool is_divergence_free(const VectorFieldT<Scalar>& u, Scalar rel = Scalar(1e-10)) {
  return max_divergence(u) <= rel * max_coefficient(u);
}

/// Galerkin cutoff P_n: keep wavevectors in the closed ball |m| <= n.
template <typename Scalar>
ScalarFieldT<Scalar> galerkin_cutoff(const ScalarFieldT<Scalar>& f, int radius) {
  if (radius < 0) throw PreconditionError("cutoff radius must be nonnegative");
  const long r2 = static_cast<long>(radius) * radius;
  return apply_multiplier(f, [r2](int k1, int k2, bool, bool) {
    return (static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2) <= r2 ? Scalar(1) : Scalar(0);
  });
}

template <typename Scalar>
VectorFieldT<Scalar> galerkin_cutoff(const VectorFieldT<Scalar>& u, int radius) {
  return VectorFieldT<Scalar>(galerkin_cutoff(u.u1, radius), galerkin_cutoff(u.u2, radius));
}

/// Zeroes every coefficient whose wavevector has a Nyquist component.
template <typename Scalar>
ScalarFieldT<Scalar> strip_nyquist(const ScalarFieldT<Scalar>& f) {
  return apply_multiplier(f, [](int, int, bool ny1, bool ny2) { return (ny1 || ny2) ? Scalar(0) : Scalar(1); });
}

template <typename Scalar>
VectorFieldT<Scalar> strip_nyquist(const VectorFieldT<Scalar>& u) {
  return VectorFieldT<Scalar>(strip_nyquist(u.u1), strip_nyquist(u.u2));
}

/// 2/3-rule mask: zero modes with max(|n1|, |n2|) > dealias_cut.
template <typename Scalar>
ScalarFieldT<Scalar> dealias(const ScalarFieldT<Scalar>& f) {
  const int cut = f.grid().dealias_cut();
  return apply_multiplier(f, [cut](int k1, int k2, bool, bool) {
    return std::max(std::abs(k1), std::abs(k2)) <= cut ? Scalar(1) : Scalar(0);
  });
}

/// H^s norm ((2pi)^2 sum (1+|n|^2)^s |f^(n)|^2)^{1/2}.
template <typename Scalar>
Scalar sobolev_norm(const ScalarFieldT<Scalar>& f, Scalar s) {
  const Grid& g = f.grid();
  const int n = g.size();
  Scalar acc(0);
  for (int i2 = 0; i2 < n; ++i2) {
    const int k2 = g.wavenumber(i2);
    for (int i1 = 0; i1 < n; ++i1) {
      const int k1 = g.wavenumber(i1);
      acc += std::pow(Scalar(1 + k1 * k1 + k2 * k2), s) * std::norm(f.coeffs()(i1, i2));
    }
  }
  const Scalar area = Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  return std::sqrt(area * acc);
}

template <typename Scalar>
Scalar sobolev_norm(const VectorFieldT<Scalar>& u, Scalar s) {
  const Scalar a = sobolev_norm(u.u1, s);
  const Scalar b = sobolev_norm(u.u2, s);
  return std::sqrt(a * a + b * b);
}

/// Homogeneous norm ((2pi)^2 sum_{n != 0} |n|^{2s} |f^(n)|^2)^{1/2}; s = -1 gives Hdot^{-1}.
template <typename Scalar>
Scalar homogeneous_sobolev_norm(const ScalarFieldT<Scalar>& f, Scalar s) {
  const Grid& g = f.grid();
  const int n = g.size();
  Scalar acc(0);
  for (int i2 = 0; i2 < n; ++i2) {
    const int k2 = g.wavenumber(i2);
    for (int i1 = 0; i1 < n; ++i1) {
      const int k1 = g.wavenumber(i1);
      const int kk = k1 * k1 + k2 * k2;
      if (kk == 0) continue;
      acc += std::pow(Scalar(kk), s) * std::norm(f.coeffs()(i1, i2));
    }
  }
  const Scalar area = Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  return std::sqrt(area * acc);
}

/// Pointwise product on the collocation grid, then the 2/3 mask.
template <typename Scalar>
ScalarFieldT<Scalar> dealias_product(const ScalarFieldT<Scalar>& f, const ScalarFieldT<Scalar>& g) {
  require_same_grid(f.grid(), g.grid());
  const GridArray<Scalar> p = inverse_transform(f) * inverse_transform(g);
  return dealias(forward_transform(f.grid(), p));
}

/// Pointwise product on a (factor*N)^2 grid, truncated back to the N grid
/// (no 2/3 mask). factor >= 2 makes the product of two fields exact on
/// every retained mode.
template <typename Scalar>
ScalarFieldT<Scalar> oversampled_product(const ScalarFieldT<Scalar>& f, const ScalarFieldT<Scalar>& g,
                                         int factor) {
  require_same_grid(f.grid(), g.grid());
  const GridArray<Scalar> p = sample(f, factor) * sample(g, factor);
  return project_samples(f.grid(), p);
}

/// Exact bi-harmonic heat flow e^{-t Delta^2} f.
template <typename Scalar>
ScalarFieldT<Scalar> biharmonic_semigroup(const ScalarFieldT<Scalar>& f, Scalar t) {
  if (!(t >= Scalar(0))) throw PreconditionError("semigroup time must be nonnegative");
  return apply_multiplier(f, [t](int k1, int k2, bool, bool) {
    const Scalar kk = Scalar(k1 * k1 + k2 * k2);
    return std::exp(-t * kk * kk);
  });
}

/// Maximum of |f| over the (factor*N)^2 sample grid.
template <typename Scalar>
Scalar linf_norm(const ScalarFieldT<Scalar>& f, int factor = 1) {
  return sample(f, factor).abs().maxCoeff();
}

}  // namespace nsch
