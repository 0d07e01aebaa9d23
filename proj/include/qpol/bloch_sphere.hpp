/**
 * @file bloch_sphere.hpp
 * @brief Pure two-level states, Bloch angles and the Fubini-Study distance.
 */
#pragma once

#include <cmath>

#include "qpol/errors.hpp"
#include "qpol/numerics.hpp"

namespace qpol {

inline constexpr double kNormTol = 1e-12;

// A pure qubit state stored exactly as given. Global phase is never
// canonicalized; compare with equal_up_to_phase().
class QuantumState {
 public:
  constexpr QuantumState() : amp_{1.0, 0.0} {}
  constexpr QuantumState(cplx c0, cplx c1) : amp_{c0, c1} {}
  explicit constexpr QuantumState(const Complex2Vector& v) : amp_(v) {}

  const Complex2Vector& amplitudes() const { return amp_; }
  cplx c0() const { return amp_.c0; }
  cplx c1() const { return amp_.c1; }

  double norm() const { return amp_.norm(); }
  bool is_normalized(double tol = kNormTol) const { return std::abs(amp_.norm_sq() - 1.0) <= tol; }

  QuantumState normalized() const {
    const double n = amp_.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite state");
    return QuantumState{(1.0 / n) * amp_};
  }

  QuantumState with_phase(double phase) const { return QuantumState{std::polar(1.0, phase) * amp_}; }

 private:
  Complex2Vector amp_;
};

inline cplx inner(const QuantumState& a, const QuantumState& b) { return inner(a.amplitudes(), b.amplitudes()); }

inline QuantumState operator*(const Complex2Matrix& m, const QuantumState& s) {
  return QuantumState{m * s.amplitudes()};
}

// The state orthogonal to s, (-c1*, c0*). Antipodal on the Bloch sphere.
inline QuantumState orthogonal_complement(const QuantumState& s) {
  return {-std::conj(s.c1()), std::conj(s.c0())};
}

struct BlochAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

inline QuantumState state_from_angles(const BlochAngles& a) {
  if (!(a.theta >= 0.0 && a.theta <= pi) || !(a.phi >= 0.0 && a.phi < 2.0 * pi)) {
    throw InvalidArgument("state_from_angles: need theta in [0, pi] and phi in [0, 2 pi)");
  }
  return {std::cos(a.theta / 2.0), std::polar(std::sin(a.theta / 2.0), a.phi)};
}

// Inverse of state_from_angles up to global phase; phi is 0 at the poles.
inline BlochAngles angles_from_state(const QuantumState& s, double pole_tol = 1e-14) {
  const QuantumState n = s.normalized();
  const double r0 = std::abs(n.c0());
  const double r1 = std::abs(n.c1());
  BlochAngles out;
  out.theta = 2.0 * std::atan2(r1, r0);
  if (r0 <= pole_tol || r1 <= pole_tol) return out;
  double phi = std::arg(n.c1()) - std::arg(n.c0());
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi = 0.0;
  out.phi = phi;
  return out;
}

// <psi| sigma |psi> for normalized psi.
inline Vec3 bloch_vector(const QuantumState& s) {
  if (!s.is_normalized(1e-10)) throw InvalidArgument("bloch_vector: state is not normalized");
  const cplx x = std::conj(s.c0()) * s.c1();
  return {2.0 * x.real(), 2.0 * x.imag(), std::norm(s.c0()) - std::norm(s.c1())};
}

// |<a|b>|^2 / (<a|a><b|b>): the fidelity maximized over relative phase.
inline double phase_fidelity(const QuantumState& a, const QuantumState& b) {
  const double na = a.amplitudes().norm_sq();
  const double nb = b.amplitudes().norm_sq();
  if (!(na > 0.0) || !(nb > 0.0)) throw InvalidArgument("phase_fidelity: zero state");
  return std::norm(inner(a, b)) / (na * nb);
}

inline bool equal_up_to_phase(const QuantumState& a, const QuantumState& b, double tol = kClosedFormTol) {
  return phase_fidelity(a, b) >= 1.0 - tol;
}

// Great-circle angle theta_AB = 2 arccos|<a|b>| in [0, pi]. Evaluated as an
// arctangent of the orthogonal and parallel parts of b so that nearly equal
// states keep full relative precision.
inline double fubini_study_angle(const QuantumState& a, const QuantumState& b) {
  const QuantumState an = a.normalized();
  const QuantumState bn = b.normalized();
  const cplx ov = inner(an, bn);
  const Complex2Vector perp = bn.amplitudes() - ov * an.amplitudes();
  return 2.0 * std::atan2(perp.norm(), std::abs(ov));
}

}  // namespace qpol
