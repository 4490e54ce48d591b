#ifndef GQD_MATKIT_HPP
#define GQD_MATKIT_HPP

// Dense kernel for the 2x2, 3x3 and 4x4 matrices a two-qubit problem needs.
// Everything is a value type with compile-time dimensions; no allocation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <type_traits>

#include "gqd/errors.hpp"

namespace gqd {

using cplx = std::complex<double>;

namespace detail {

inline double conj_value(double x) { return x; }
inline cplx conj_value(const cplx& z) { return std::conj(z); }

inline double real_value(double x) { return x; }
inline double real_value(const cplx& z) { return z.real(); }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

template <typename T, std::size_t Rows, std::size_t Cols>
class Matrix {
  static_assert(Rows >= 1 && Rows <= 4 && Cols >= 1 && Cols <= 4, "matkit handles at most 4x4");

 public:
  using value_type = T;

  constexpr Matrix() = default;

  /// Row-major nested initializer; missing entries stay zero.
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (const auto& v : row) {
        if (i < Rows && j < Cols) (*this)(i, j) = v;
        ++j;
      }
      ++i;
    }
  }

  static Matrix identity()
    requires(Rows == Cols)
  {
    Matrix m;
    for (std::size_t i = 0; i < Rows; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::array<T, Rows>& d)
    requires(Rows == Cols)
  {
    Matrix m;
    for (std::size_t i = 0; i < Rows; ++i) m(i, i) = d[i];
    return m;
  }

  static constexpr std::size_t rows() { return Rows; }
  static constexpr std::size_t cols() { return Cols; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * Cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * Cols + j]; }

  const std::array<T, Rows * Cols>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<T, Rows * Cols> data_{};
};

template <std::size_t R, std::size_t C>
using CMat = Matrix<cplx, R, C>;
using CMat2 = CMat<2, 2>;
using CMat4 = CMat<4, 4>;
using RMat3 = Matrix<double, 3, 3>;
using Vec3 = std::array<double, 3>;

template <typename T, std::size_t R, std::size_t K, std::size_t C>
Matrix<T, R, C> operator*(const Matrix<T, R, K>& a, const Matrix<T, K, C>& b) {
  Matrix<T, R, C> out;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T, std::size_t R, std::size_t C>
Matrix<T, C, R> adjoint(const Matrix<T, R, C>& a) {
  Matrix<T, C, R> out;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(j, i) = detail::conj_value(a(i, j));
  return out;
}

template <typename T, std::size_t R, std::size_t C>
Matrix<T, C, R> transpose(const Matrix<T, R, C>& a) {
  Matrix<T, C, R> out;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(j, i) = a(i, j);
  return out;
}

template <typename T, std::size_t N>
T trace(const Matrix<T, N, N>& a) {
  T s{};
  for (std::size_t i = 0; i < N; ++i) s += a(i, i);
  return s;
}

/// Largest absolute entry.
template <typename T, std::size_t R, std::size_t C>
double max_abs(const Matrix<T, R, C>& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

template <typename T, std::size_t R, std::size_t C>
double frobenius_norm(const Matrix<T, R, C>& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

template <typename T, std::size_t R, std::size_t C>
bool all_finite(const Matrix<T, R, C>& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const T& v) { return detail::is_finite(v); });
}

template <typename T, std::size_t N>
double hermiticity_residual(const Matrix<T, N, N>& a) {
  return max_abs(a - adjoint(a));
}

template <typename T, std::size_t R1, std::size_t C1, std::size_t R2, std::size_t C2>
Matrix<T, R1 * R2, C1 * C2> kron(const Matrix<T, R1, C1>& a, const Matrix<T, R2, C2>& b) {
  Matrix<T, R1 * R2, C1 * C2> out;
  for (std::size_t i = 0; i < R1; ++i)
    for (std::size_t j = 0; j < C1; ++j)
      for (std::size_t k = 0; k < R2; ++k)
        for (std::size_t l = 0; l < C2; ++l) out(i * R2 + k, j * C2 + l) = a(i, j) * b(k, l);
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic complex Jacobi)

template <typename T, std::size_t N>
struct EigenDecomp {
  std::array<double, N> values{};  // ascending
  Matrix<T, N, N> vectors;         // column i pairs with values[i]
  int sweeps = 0;
};

struct JacobiSettings {
  int max_sweeps = 100;
  double relative_threshold = 1e-14;
  double hermitian_tolerance = 1e-10;
};

template <typename T, std::size_t N>
EigenDecomp<T, N> hermitian_eigen(const Matrix<T, N, N>& a, const JacobiSettings& settings = {}) {
  if (!all_finite(a)) throw NotHermitian("hermitian_eigen: non-finite entry");
  if (hermiticity_residual(a) > settings.hermitian_tolerance)
    throw NotHermitian("hermitian_eigen: matrix is not Hermitian");

  Matrix<T, N, N> w = (a + adjoint(a)) * T(0.5);
  Matrix<T, N, N> v = Matrix<T, N, N>::identity();
  const double scale = frobenius_norm(w);

  auto off_norm = [&w] {
    double s = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = 0; q < N; ++q)
        if (p != q) s += std::norm(w(p, q));
    return std::sqrt(s);
  };

  int sweep = 0;
  if (scale > 0.0) {
    for (;; ++sweep) {
      if (off_norm() <= settings.relative_threshold * scale) break;
      if (sweep >= settings.max_sweeps) throw NoConvergence("hermitian_eigen: sweep budget exhausted");
      for (std::size_t p = 0; p + 1 < N; ++p) {
        for (std::size_t q = p + 1; q < N; ++q) {
          const T g = w(p, q);
          const double ag = std::abs(g);
          if (ag == 0.0) continue;
          // Phase the pivot real, then apply a real Jacobi rotation.
          const T phase = g / ag;
          const double app = detail::real_value(w(p, p));
          const double aqq = detail::real_value(w(q, q));
          const double theta = (aqq - app) / (2.0 * ag);
          double t;
          if (std::abs(theta) > 1e150) {
            t = 0.5 / theta;
          } else {
            t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          }
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;

          Matrix<T, N, N> u = Matrix<T, N, N>::identity();
          u(p, p) = T(c);
          u(p, q) = T(s);
          u(q, p) = T(-s) * detail::conj_value(phase);
          u(q, q) = T(c) * detail::conj_value(phase);

          w = adjoint(u) * w * u;
          v = v * u;
          w(p, q) = T(0);
          w(q, p) = T(0);
          for (std::size_t i = 0; i < N; ++i) w(i, i) = T(detail::real_value(w(i, i)));
        }
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&w](std::size_t i, std::size_t j) {
    return detail::real_value(w(i, i)) < detail::real_value(w(j, j));
  });

  EigenDecomp<T, N> out;
  out.sweeps = sweep;
  for (std::size_t c = 0; c < N; ++c) {
    out.values[c] = detail::real_value(w(order[c], order[c]));
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

/// V diag(f(lambda_i)) V^dagger for a Hermitian matrix.
template <typename T, std::size_t N, typename F>
Matrix<T, N, N> apply_spectral(const EigenDecomp<T, N>& eig, F&& f) {
  Matrix<T, N, N> d;
  for (std::size_t i = 0; i < N; ++i) d(i, i) = T(f(eig.values[i]));
  return eig.vectors * d * adjoint(eig.vectors);
}

/// exp(s * a) for Hermitian a.
template <typename T, std::size_t N>
Matrix<T, N, N> herm_exp(const Matrix<T, N, N>& a, double s) {
  const auto eig = hermitian_eigen(a);
  return apply_spectral(eig, [s](double lambda) { return std::exp(s * lambda); });
}

// ---------------------------------------------------------------------------
// Real 3-vectors

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline Vec3 operator*(const RMat3& m, const Vec3& v) {
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2];
  return out;
}

inline RMat3 outer(const Vec3& a, const Vec3& b) {
  RMat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
  return m;
}

inline Vec3 column(const RMat3& m, std::size_t j) { return {m(0, j), m(1, j), m(2, j)}; }

// ---------------------------------------------------------------------------
// Single-qubit constants

/// sigma_0 (identity), sigma_x, sigma_y, sigma_z for i = 0..3.
inline const CMat2& pauli(std::size_t i) {
  static const std::array<CMat2, 4> kPauli = {
      CMat2{{1.0, 0.0}, {0.0, 1.0}},
      CMat2{{0.0, 1.0}, {1.0, 0.0}},
      CMat2{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}},
      CMat2{{1.0, 0.0}, {0.0, -1.0}},
  };
  return kPauli.at(i);
}

inline const CMat2& hadamard() {
  static const CMat2 kH = [] {
    const double r = 1.0 / std::sqrt(2.0);
    return CMat2{{r, r}, {r, -r}};
  }();
  return kH;
}

/// n . sigma for a real 3-vector n.
inline CMat2 bloch_operator(const Vec3& n) {
  return pauli(1) * cplx(n[0]) + pauli(2) * cplx(n[1]) + pauli(3) * cplx(n[2]);
}

}  // namespace gqd

#endif  // GQD_MATKIT_HPP
