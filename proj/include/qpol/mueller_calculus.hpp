/**
 * @file mueller_calculus.hpp
 * @brief Lifting Jones matrices to Mueller matrices and classifying them.
 *
 * Stokes components are the coefficients of the coherency matrix on the basis
 * (I, sigma_z, sigma_x, -sigma_y), i.e. S_i = tr(Xi_i J) and
 * J = (1/2) sum_i S_i Xi_i. The sign on sigma_y follows from Jxy = <Ex Ey*>
 * and S3 = 2 Im Jxy. With this basis the trace construction and the A-matrix
 * construction coincide; the literal (I, sigma_z, sigma_x, sigma_y) basis gives
 * the same matrix conjugated by diag(1, 1, 1, -1).
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "qpol/errors.hpp"
#include "qpol/numerics.hpp"
#include "qpol/polarization.hpp"

namespace qpol {

using JonesMatrix = Complex2Matrix;
using MuellerMatrix = Real4Matrix;

inline constexpr double kImaginaryResidueTol = 1e-12;
inline constexpr std::uint64_t kDefaultProbeSeed = 20240501;
inline constexpr std::size_t kDefaultProbeCount = 1000;

// Rows are the coefficients of I, sigma_z, sigma_x and the Stokes S3 operator.
inline Complex4Matrix a_matrix() {
  Complex4Matrix a;
  a(0, 0) = 1.0;
  a(0, 3) = 1.0;
  a(1, 0) = 1.0;
  a(1, 3) = -1.0;
  a(2, 1) = 1.0;
  a(2, 2) = 1.0;
  a(3, 1) = cplx{0.0, -1.0};
  a(3, 2) = cplx{0.0, 1.0};
  return a;
}

// A^{-1} = A^dagger / 2
inline Complex4Matrix a_matrix_inverse() { return cplx{0.5, 0.0} * a_matrix().adjoint(); }

using PauliBasis = std::array<Complex2Matrix, 4>;

inline PauliBasis stokes_basis() { return {Complex2Matrix::identity(), pauli_z(), pauli_x(), cplx{-1.0, 0.0} * pauli_y()}; }
inline PauliBasis literal_wigner_basis() { return {Complex2Matrix::identity(), pauli_z(), pauli_x(), pauli_y()}; }

// diag(1, 1, 1, -1): relates the two bases above.
inline MuellerMatrix stokes_parity() { return Real4Matrix::diagonal(1.0, 1.0, 1.0, -1.0); }

namespace detail {

inline MuellerMatrix real_part_checked(const Complex4Matrix& m, double scale, const char* who) {
  MuellerMatrix out;
  const double tol = kImaginaryResidueTol * std::max(1.0, scale);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (std::abs(m(r, c).imag()) > tol) {
        throw NumericalGateFailure(std::string(who) + ": imaginary residue " + std::to_string(m(r, c).imag()) +
                                   " above threshold");
      }
      out(r, c) = m(r, c).real();
    }
  return out;
}

// (1/2) tr(U^dagger Xi_i U Xi_j)
inline Complex4Matrix trace_lift(const Complex2Matrix& u, const PauliBasis& xi) {
  Complex4Matrix m;
  const Complex2Matrix ud = u.adjoint();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(i, j) = 0.5 * (ud * xi[static_cast<std::size_t>(i)] * u * xi[static_cast<std::size_t>(j)]).trace();
  return m;
}

inline void require_finite(const JonesMatrix& j, const char* who) {
  if (!j.finite()) throw InvalidArgument(std::string(who) + ": non-finite Jones matrix");
}

}  // namespace detail

// M = A (J kron J*) A^{-1}
inline MuellerMatrix mueller_from_jones(const JonesMatrix& j) {
  detail::require_finite(j, "mueller_from_jones");
  const Complex4Matrix m = a_matrix() * kron(j, j.conjugate()) * a_matrix_inverse();
  const double s = j.max_abs();
  return detail::real_part_checked(m, s * s, "mueller_from_jones");
}

// Trace construction for an arbitrary complex (scattering) matrix.
inline MuellerMatrix mueller_from_scattering(const JonesMatrix& u) {
  detail::require_finite(u, "mueller_from_scattering");
  const double s = u.max_abs();
  return detail::real_part_checked(detail::trace_lift(u, stokes_basis()), s * s, "mueller_from_scattering");
}

namespace detail {

inline void require_unitary(const JonesMatrix& u, const char* who) {
  require_finite(u, who);
  if (!is_unitary(u, 1e-10)) throw InvalidArgument(std::string(who) + ": matrix is not unitary");
}

inline void gate_rotation(const MuellerMatrix& m, const char* who) {
  double border = 0.0;
  for (int k = 1; k < 4; ++k) border = std::max({border, std::abs(m(0, k)), std::abs(m(k, 0))});
  if (std::abs(m(0, 0) - 1.0) > 1e-10 || border > 1e-10 || std::abs(block3_det(m) - 1.0) > 1e-10) {
    throw NumericalGateFailure(std::string(who) + ": lifted matrix is not a proper rotation");
  }
}

}  // namespace detail

// SU(2) -> SO(3) image of a unitary, acting on Stokes vectors.
inline MuellerMatrix wigner_rotation(const JonesMatrix& u) {
  detail::require_unitary(u, "wigner_rotation");
  const MuellerMatrix m = mueller_from_scattering(u);
  detail::gate_rotation(m, "wigner_rotation");
  return m;
}

// Same construction on the literal (I, sigma_z, sigma_x, sigma_y) basis.
inline MuellerMatrix wigner_rotation_literal(const JonesMatrix& u) {
  detail::require_unitary(u, "wigner_rotation_literal");
  const MuellerMatrix m =
      detail::real_part_checked(detail::trace_lift(u, literal_wigner_basis()), 1.0, "wigner_rotation_literal");
  detail::gate_rotation(m, "wigner_rotation_literal");
  return m;
}

// Identity on S0 and S3, rotation by 2 phi in the (S1, S2) plane.
inline MuellerMatrix mueller_rotator(double phi) {
  MuellerMatrix m = Real4Matrix::identity();
  const double c = std::cos(2.0 * phi);
  const double s = std::sin(2.0 * phi);
  m(1, 1) = c;
  m(1, 2) = s;
  m(2, 1) = -s;
  m(2, 2) = c;
  return m;
}

// The unitary U of the rotator identity M_ROT = U (R* kron R) U^dagger.
inline Complex4Matrix rotator_basis_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Complex4Matrix u;
  u(0, 0) = r;
  u(0, 3) = r;
  u(1, 0) = r;
  u(1, 3) = -r;
  u(2, 1) = r;
  u(2, 2) = r;
  u(3, 1) = cplx{0.0, r};
  u(3, 2) = cplx{0.0, -r};
  return u;
}

inline MuellerMatrix mueller_rotator_from_basis(double phi) {
  const Complex2Matrix r = rotation_matrix(phi);
  const Complex4Matrix u = rotator_basis_matrix();
  return detail::real_part_checked(u * kron(r.conjugate(), r) * u.adjoint(), 1.0, "mueller_rotator_from_basis");
}

inline StokesVector apply(const MuellerMatrix& m, const StokesVector& s) {
  return StokesVector::from_array(m * s.as_array());
}

// J = W P with W unitary and P = sqrt(J^dagger J) positive definite.
struct PolarDecomposition {
  Complex2Matrix unitary;
  Complex2Matrix positive;
};

// Principal square root of a 2x2 Hermitian positive definite matrix.
inline Complex2Matrix sqrt_psd(const Complex2Matrix& m) {
  const double d = m.det().real();
  if (!(d > 0.0)) throw DegenerateInput("sqrt_psd: matrix is singular");
  const double sd = std::sqrt(d);
  const double t = std::sqrt(m.trace().real() + 2.0 * sd);
  return cplx{1.0 / t, 0.0} * (m + cplx{sd, 0.0} * Complex2Matrix::identity());
}

inline Complex2Matrix inverse(const Complex2Matrix& m) {
  const cplx d = m.det();
  if (std::abs(d) == 0.0) throw DegenerateInput("inverse: singular matrix");
  return (1.0 / d) * Complex2Matrix{m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)};
}

inline PolarDecomposition polar_decomposition(const JonesMatrix& j) {
  detail::require_finite(j, "polar_decomposition");
  const double scale = std::max(1e-300, j.max_abs());
  if (std::abs(j.det()) <= 1e-14 * scale * scale) throw DegenerateInput("polar_decomposition: singular Jones matrix");
  const Complex2Matrix p = sqrt_psd(j.adjoint() * j);
  return {j * inverse(p), p};
}

enum class MuellerClass { Nondepolarizing, Depolarizing };

inline const char* to_string(MuellerClass c) {
  return c == MuellerClass::Nondepolarizing ? "nondepolarizing" : "depolarizing";
}

// Probes m with random fully polarized unit-intensity beams. Outputs that are
// fully blocked are skipped; any output violating the Stokes bound makes the
// matrix non-physical.
inline MuellerClass classify_mueller(const MuellerMatrix& m, std::uint64_t seed = kDefaultProbeSeed,
                                     std::size_t probes = kDefaultProbeCount) {
  if (!m.finite()) throw InvalidArgument("classify_mueller: non-finite Mueller matrix");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  bool preserves = true;
  for (std::size_t k = 0; k < probes; ++k) {
    Vec3 n{gauss(rng), gauss(rng), gauss(rng)};
    const double len = norm(n);
    if (!(len > 0.0)) continue;
    n = (1.0 / len) * n;
    const Real4Vector out = m * Real4Vector{1.0, n[0], n[1], n[2]};
    const double pol = std::sqrt(out[1] * out[1] + out[2] * out[2] + out[3] * out[3]);
    if (out[0] < -1e-12 || pol > out[0] + kPolarizationTol * std::max(1.0, out[0])) {
      throw InvalidArgument("classify_mueller: probe produced an invalid Stokes vector; matrix is non-physical");
    }
    if (out[0] <= 1e-12) continue;
    if (pol / out[0] < 1.0 - 1e-8) preserves = false;
  }
  return preserves ? MuellerClass::Nondepolarizing : MuellerClass::Depolarizing;
}

}  // namespace qpol
