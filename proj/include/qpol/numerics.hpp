/**
 * @file numerics.hpp
 * @brief Small fixed-size linear algebra and deterministic numerical oracles.
 *
 * Everything here is a value type or a pure function. The 2x2 complex and
 * 4x4 real/complex matrices are stored row-major in std::array so they can be
 * copied freely and shared across threads.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>

#include "qpol/errors.hpp"

namespace qpol {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Default comparison tolerances. Every routine that compares takes its own
// tolerance argument; these are only the defaults.
inline constexpr double kClosedFormTol = 1e-10;
inline constexpr double kOracleTol = 1e-6;

// ---------------------------------------------------------------------------
// Complex 2-vector

struct Complex2Vector {
  cplx c0{};
  cplx c1{};

  constexpr Complex2Vector() = default;
  constexpr Complex2Vector(cplx a, cplx b) : c0(a), c1(b) {}

  double norm_sq() const { return std::norm(c0) + std::norm(c1); }
  double norm() const { return std::sqrt(norm_sq()); }
  bool finite() const {
    return std::isfinite(c0.real()) && std::isfinite(c0.imag()) && std::isfinite(c1.real()) &&
           std::isfinite(c1.imag());
  }

  friend Complex2Vector operator+(const Complex2Vector& a, const Complex2Vector& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend Complex2Vector operator-(const Complex2Vector& a, const Complex2Vector& b) {
    return {a.c0 - b.c0, a.c1 - b.c1};
  }
  friend Complex2Vector operator*(cplx s, const Complex2Vector& v) { return {s * v.c0, s * v.c1}; }
  friend Complex2Vector operator*(const Complex2Vector& v, cplx s) { return s * v; }
};

// <a|b>, antilinear in the first argument.
inline cplx inner(const Complex2Vector& a, const Complex2Vector& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

inline double max_abs_diff(const Complex2Vector& a, const Complex2Vector& b) {
  return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

// ---------------------------------------------------------------------------
// Real 3-vector (Bloch and Poincare directions)

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

// Angle between two nonzero directions, accurate for nearly parallel inputs.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// ---------------------------------------------------------------------------
// Complex 2x2 matrix

struct Complex2Matrix {
  std::array<cplx, 4> e{};  // row-major

  constexpr Complex2Matrix() = default;
  constexpr Complex2Matrix(cplx m00, cplx m01, cplx m10, cplx m11) : e{m00, m01, m10, m11} {}

  static constexpr Complex2Matrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
  const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

  Complex2Matrix adjoint() const {
    return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
  }
  Complex2Matrix conjugate() const {
    return {std::conj(e[0]), std::conj(e[1]), std::conj(e[2]), std::conj(e[3])};
  }
  Complex2Matrix transpose() const { return {e[0], e[2], e[1], e[3]}; }
  cplx trace() const { return e[0] + e[3]; }
  cplx det() const { return e[0] * e[3] - e[1] * e[2]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : e) m = std::max(m, std::abs(x));
    return m;
  }
  bool finite() const {
    return std::all_of(e.begin(), e.end(), [](const cplx& x) {
      return std::isfinite(x.real()) && std::isfinite(x.imag());
    });
  }

  friend Complex2Matrix operator*(const Complex2Matrix& a, const Complex2Matrix& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
  }
  friend Complex2Matrix operator+(const Complex2Matrix& a, const Complex2Matrix& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
  }
  friend Complex2Matrix operator-(const Complex2Matrix& a, const Complex2Matrix& b) {
    return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
  }
  friend Complex2Matrix operator*(cplx s, const Complex2Matrix& a) {
    return {s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]};
  }
  friend Complex2Vector operator*(const Complex2Matrix& a, const Complex2Vector& v) {
    return {a.e[0] * v.c0 + a.e[1] * v.c1, a.e[2] * v.c0 + a.e[3] * v.c1};
  }
};

inline double max_abs_diff(const Complex2Matrix& a, const Complex2Matrix& b) {
  return (a - b).max_abs();
}

inline bool is_hermitian(const Complex2Matrix& m, double tol) {
  return std::abs(m(0, 0).imag()) <= tol && std::abs(m(1, 1).imag()) <= tol &&
         std::abs(m(0, 1) - std::conj(m(1, 0))) <= tol;
}

inline bool is_unitary(const Complex2Matrix& m, double tol) {
  return max_abs_diff(m.adjoint() * m, Complex2Matrix::identity()) <= tol;
}

inline constexpr Complex2Matrix pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline constexpr Complex2Matrix pauli_y() { return {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}; }
inline constexpr Complex2Matrix pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

// a0*I + a.sigma
inline Complex2Matrix pauli_combination(double a0, const Vec3& a) {
  return {a0 + a[2], cplx{a[0], -a[1]}, cplx{a[0], a[1]}, a0 - a[2]};
}

// exp(-i H t / hbar) for Hermitian H, via H = a0 I + a.sigma:
//   exp(-i a0 t/hbar) [cos(|a| t/hbar) I - i sin(|a| t/hbar) a_hat.sigma]
inline Complex2Matrix matrix_exponential_su2(const Complex2Matrix& h, double t, double hbar = 1.0) {
  if (!h.finite() || !std::isfinite(t) || !(hbar > 0.0)) {
    throw InvalidArgument("matrix_exponential_su2: non-finite input or non-positive hbar");
  }
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.max_abs()))) {
    throw InvalidArgument("matrix_exponential_su2: generator is not Hermitian");
  }
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const cplx off = 0.5 * (h(1, 0) + std::conj(h(0, 1)));
  const Vec3 a{off.real(), off.imag(), 0.5 * (h(0, 0).real() - h(1, 1).real())};
  const double strength = norm(a);
  const double angle = strength * t / hbar;
  const cplx phase = std::exp(cplx{0.0, -a0 * t / hbar});

  Complex2Matrix u = Complex2Matrix::identity();
  u = cplx{std::cos(angle), 0.0} * u;
  if (strength > 0.0) {
    const double k = std::sin(angle) / strength;
    u = u - cplx{0.0, k} * pauli_combination(0.0, a);
  }
  return phase * u;
}

// ---------------------------------------------------------------------------
// Real and complex 4-vectors / 4x4 matrices (Stokes calculus)

using Real4Vector = std::array<double, 4>;

struct Real4Matrix {
  std::array<double, 16> e{};  // row-major

  static Real4Matrix identity() {
    Real4Matrix m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
  static Real4Matrix diagonal(double d0, double d1, double d2, double d3) {
    Real4Matrix m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
  }

  double& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
  double operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

  Real4Matrix transpose() const {
    Real4Matrix t;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  bool finite() const {
    return std::all_of(e.begin(), e.end(), [](double x) { return std::isfinite(x); });
  }

  friend Real4Matrix operator*(const Real4Matrix& a, const Real4Matrix& b) {
    Real4Matrix p;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
        p(r, c) = s;
      }
    return p;
  }
  friend Real4Vector operator*(const Real4Matrix& a, const Real4Vector& v) {
    Real4Vector out{};
    for (int r = 0; r < 4; ++r) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(r, k) * v[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(r)] = s;
    }
    return out;
  }
};

inline double max_abs_diff(const Real4Matrix& a, const Real4Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

// Determinant of the lower-right 3x3 block.
inline double block3_det(const Real4Matrix& m) {
  return m(1, 1) * (m(2, 2) * m(3, 3) - m(2, 3) * m(3, 2)) -
         m(1, 2) * (m(2, 1) * m(3, 3) - m(2, 3) * m(3, 1)) +
         m(1, 3) * (m(2, 1) * m(3, 2) - m(2, 2) * m(3, 1));
}

struct Complex4Matrix {
  std::array<cplx, 16> e{};

  cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
  const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

  Complex4Matrix adjoint() const {
    Complex4Matrix t;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
  }

  friend Complex4Matrix operator*(const Complex4Matrix& a, const Complex4Matrix& b) {
    Complex4Matrix p;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        cplx s{};
        for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
        p(r, c) = s;
      }
    return p;
  }
  friend Complex4Matrix operator*(cplx s, const Complex4Matrix& a) {
    Complex4Matrix p = a;
    for (auto& x : p.e) x *= s;
    return p;
  }
};

// Kronecker product, row index (i1,i2) -> 2*i1+i2.
inline Complex4Matrix kron(const Complex2Matrix& a, const Complex2Matrix& b) {
  Complex4Matrix k;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) k(2 * i1 + i2, 2 * j1 + j2) = a(i1, j1) * b(i2, j2);
  return k;
}

// ---------------------------------------------------------------------------
// Deterministic oracles

struct GridMaximum {
  double argmax = 0.0;
  double value = 0.0;
};

namespace detail {

template <class F>
double checked_eval(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite function value at x = " << x;
    throw NonFiniteValue(os.str(), x);
  }
  return y;
}

}  // namespace detail

// Maximize f on a uniform grid of n points over [a, b], then polish the best
// grid point with golden-section search inside its neighbouring cells.
template <class F>
GridMaximum grid_search_max(F&& f, double a, double b, std::size_t n) {
  if (n < 2 || !(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("grid_search_max: need n >= 2 and finite a < b");
  }
  const double h = (b - a) / static_cast<double>(n - 1);
  std::size_t best = 0;
  double best_val = detail::checked_eval(f, a);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = (i + 1 == n) ? b : a + h * static_cast<double>(i);
    const double y = detail::checked_eval(f, x);
    if (y > best_val) {
      best_val = y;
      best = i;
    }
  }
  const double x_best = (best + 1 == n) ? b : a + h * static_cast<double>(best);
  double lo = best == 0 ? a : x_best - h;
  double hi = best + 1 == n ? b : x_best + h;

  constexpr double inv_phi = 0.6180339887498948482;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = detail::checked_eval(f, x1);
  double f2 = detail::checked_eval(f, x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + std::abs(x_best)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = detail::checked_eval(f, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = detail::checked_eval(f, x1);
    }
  }
  GridMaximum out{x_best, best_val};
  const double xr = f1 >= f2 ? x1 : x2;
  const double yr = std::max(f1, f2);
  if (yr >= best_val) out = {xr, yr};
  return out;
}

// (1/T) * integral_0^T f(t) dt by the composite trapezoid rule on n panels.
template <class F>
double time_average_quadrature(F&& f, double period, std::size_t n) {
  if (!(period > 0.0) || !std::isfinite(period) || n < 4) {
    throw InvalidArgument("time_average_quadrature: need period > 0 and n >= 4");
  }
  const double h = period / static_cast<double>(n);
  double sum = 0.5 * (detail::checked_eval(f, 0.0) + detail::checked_eval(f, period));
  for (std::size_t k = 1; k < n; ++k) sum += detail::checked_eval(f, h * static_cast<double>(k));
  return sum / static_cast<double>(n);
}

}  // namespace qpol
