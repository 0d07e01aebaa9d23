/**
 * @file polarization.hpp
 * @brief Stokes parameters, coherency matrices, the polarization ellipse and
 *        the Poincare sphere.
 *
 * Conventions:
 *  - Real fields Ex(t) = E0x cos(wt + dx), Ey(t) = E0y cos(wt + dy), with
 *    analytic signals E0x e^{i(wt + dx)} and delta = dx - dy.
 *  - Jxy = <Ex Ey*>, so a monochromatic wave has Jxy = E0x E0y e^{i delta}.
 *  - S0 = Jxx + Jyy, S1 = Jxx - Jyy, S2 = 2 Re Jxy, S3 = 2 Im Jxy.
 *  - Frame rotation by phi: E' = R(phi) E with R = [[cos, sin], [-sin, cos]].
 */
#pragma once

#include <cmath>
#include <utility>

#include "qpol/bloch_sphere.hpp"
#include "qpol/errors.hpp"
#include "qpol/numerics.hpp"

namespace qpol {

inline constexpr double kPolarizationTol = 1e-9;

struct FieldAmplitudes {
  double e0x = 1.0;
  double e0y = 0.0;
  double delta_x = 0.0;
  double delta_y = 0.0;
  double omega = 1.0;

  double delta() const { return delta_x - delta_y; }
  double period() const { return 2.0 * pi / omega; }
};

struct StokesVector {
  double s0 = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  Real4Vector as_array() const { return {s0, s1, s2, s3}; }
  static StokesVector from_array(const Real4Vector& v) { return {v[0], v[1], v[2], v[3]}; }
  // Length of the polarized part, sqrt(S1^2 + S2^2 + S3^2).
  double polarized_intensity() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

inline double max_abs_diff(const StokesVector& a, const StokesVector& b) {
  return std::max({std::abs(a.s0 - b.s0), std::abs(a.s1 - b.s1), std::abs(a.s2 - b.s2), std::abs(a.s3 - b.s3)});
}

struct CoherencyMatrix {
  double jxx = 1.0;
  double jyy = 0.0;
  cplx jxy{};

  cplx jyx() const { return std::conj(jxy); }
  double trace() const { return jxx + jyy; }
  double det() const { return jxx * jyy - std::norm(jxy); }
  Complex2Matrix as_matrix() const { return {jxx, jxy, jyx(), jyy}; }

  // Hermitian part of m; the anti-Hermitian residue is assumed to be rounding.
  static CoherencyMatrix from_matrix(const Complex2Matrix& m) {
    return {m(0, 0).real(), m(1, 1).real(), 0.5 * (m(0, 1) + std::conj(m(1, 0)))};
  }
};

inline double max_abs_diff(const CoherencyMatrix& a, const CoherencyMatrix& b) {
  return max_abs_diff(a.as_matrix(), b.as_matrix());
}

struct EllipseAngles {
  double beta = 0.0;  // ellipticity, (-pi/4, pi/4]
  double chi = 0.0;   // orientation, [0, pi)
};

struct PolarizationReport {
  double p = 0.0;
  double i_tot = 0.0;
  double i_pol = 0.0;
  double j_abs = 0.0;
  double beta_xy = 0.0;
};

// ---------------------------------------------------------------------------
// Validation

inline void validate(const FieldAmplitudes& f) {
  if (!std::isfinite(f.e0x) || !std::isfinite(f.e0y) || !std::isfinite(f.delta_x) || !std::isfinite(f.delta_y)) {
    throw InvalidArgument("FieldAmplitudes: non-finite entry");
  }
  if (f.e0x < 0.0 || f.e0y < 0.0) throw InvalidArgument("FieldAmplitudes: amplitudes must be nonnegative");
  if (f.e0x == 0.0 && f.e0y == 0.0) throw InvalidArgument("FieldAmplitudes: both amplitudes are zero");
  if (!(f.omega > 0.0) || !std::isfinite(f.omega)) throw InvalidArgument("FieldAmplitudes: omega must be positive");
}

inline void validate(const StokesVector& s) {
  if (!std::isfinite(s.s0) || !std::isfinite(s.s1) || !std::isfinite(s.s2) || !std::isfinite(s.s3)) {
    throw InvalidArgument("StokesVector: non-finite entry");
  }
  if (!(s.s0 > 0.0)) throw InvalidArgument("StokesVector: s0 must be positive");
  const double pol2 = s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3;
  if (pol2 > s.s0 * s.s0 + kPolarizationTol * std::max(1.0, s.s0 * s.s0)) {
    throw InvalidArgument("StokesVector: s1^2 + s2^2 + s3^2 exceeds s0^2");
  }
}

inline void validate(const CoherencyMatrix& j) {
  if (!std::isfinite(j.jxx) || !std::isfinite(j.jyy) || !std::isfinite(j.jxy.real()) ||
      !std::isfinite(j.jxy.imag())) {
    throw InvalidArgument("CoherencyMatrix: non-finite entry");
  }
  const double scale = std::max(1.0, j.trace());
  if (j.jxx < -kPolarizationTol * scale || j.jyy < -kPolarizationTol * scale) {
    throw InvalidArgument("CoherencyMatrix: negative diagonal intensity");
  }
  if (j.det() < -kPolarizationTol * scale * scale) throw InvalidArgument("CoherencyMatrix: det(J) < 0");
  if (std::abs(j.jxy) > std::sqrt(std::max(0.0, j.jxx * j.jyy)) + kPolarizationTol * scale) {
    throw InvalidArgument("CoherencyMatrix: |Jxy| exceeds sqrt(Jxx Jyy)");
  }
}

inline void validate(const EllipseAngles& a) {
  if (!(a.beta > -pi / 4.0 && a.beta <= pi / 4.0)) throw InvalidArgument("EllipseAngles: beta outside (-pi/4, pi/4]");
  if (!(a.chi >= 0.0 && a.chi < pi)) throw InvalidArgument("EllipseAngles: chi outside [0, pi)");
}

// ---------------------------------------------------------------------------
// Monochromatic fields

inline std::pair<double, double> field_components(const FieldAmplitudes& f, double t) {
  return {f.e0x * std::cos(f.omega * t + f.delta_x), f.e0y * std::cos(f.omega * t + f.delta_y)};
}

inline StokesVector stokes_from_fields(const FieldAmplitudes& f) {
  validate(f);
  const double xx = f.e0x * f.e0x;
  const double yy = f.e0y * f.e0y;
  const double xy = 2.0 * f.e0x * f.e0y;
  return {xx + yy, xx - yy, xy * std::cos(f.delta()), xy * std::sin(f.delta())};
}

// |Ex^2/E0x^2 + Ey^2/E0y^2 - 2 Ex Ey cos(delta)/(E0x E0y) - sin^2(delta)| at time t.
// A linearly polarized wave with one zero amplitude uses the form multiplied
// through by E0x^2 E0y^2, which vanishes identically.
inline double verify_ellipse_point(const FieldAmplitudes& f, double t) {
  validate(f);
  const auto [ex, ey] = field_components(f, t);
  const double sd = std::sin(f.delta());
  if (f.e0x == 0.0 || f.e0y == 0.0) {
    const double a2 = f.e0x * f.e0x;
    const double b2 = f.e0y * f.e0y;
    return std::abs(ex * ex * b2 + ey * ey * a2 - 2.0 * ex * ey * f.e0x * f.e0y * std::cos(f.delta()) -
                    a2 * b2 * sd * sd);
  }
  const double u = ex / f.e0x;
  const double v = ey / f.e0y;
  return std::abs(u * u + v * v - 2.0 * u * v * std::cos(f.delta()) - sd * sd);
}

// ---------------------------------------------------------------------------
// Stokes, coherency and the Poincare sphere

inline StokesVector poincare_from_angles(const EllipseAngles& a, double s0) {
  validate(a);
  if (!(s0 > 0.0) || !std::isfinite(s0)) throw InvalidArgument("poincare_from_angles: s0 must be positive");
  const double c2b = std::cos(2.0 * a.beta);
  return {s0, s0 * c2b * std::cos(2.0 * a.chi), s0 * c2b * std::sin(2.0 * a.chi), s0 * std::sin(2.0 * a.beta)};
}

// Partially polarized beam of intensity s0 whose polarized part sits at (beta, chi).
inline StokesVector partially_polarized_stokes(const EllipseAngles& a, double p, double s0 = 1.0) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("partially_polarized_stokes: p outside [0, 1]");
  const StokesVector full = poincare_from_angles(a, s0);
  return {s0, p * full.s1, p * full.s2, p * full.s3};
}

inline CoherencyMatrix coherency_from_stokes(const StokesVector& s) {
  validate(s);
  return {0.5 * (s.s0 + s.s1), 0.5 * (s.s0 - s.s1), cplx{0.5 * s.s2, 0.5 * s.s3}};
}

inline StokesVector stokes_from_coherency(const CoherencyMatrix& j) {
  validate(j);
  return {j.jxx + j.jyy, j.jxx - j.jyy, 2.0 * j.jxy.real(), 2.0 * j.jxy.imag()};
}

// J = E E^dagger for a Jones vector E = (Ex, Ey) in the linear basis.
inline CoherencyMatrix coherency_from_jones_vector(const Complex2Vector& e) {
  return {std::norm(e.c0), std::norm(e.c1), e.c0 * std::conj(e.c1)};
}

inline StokesVector stokes_from_jones_vector(const Complex2Vector& e) {
  if (!(e.norm_sq() > 0.0)) throw InvalidArgument("stokes_from_jones_vector: zero field");
  return stokes_from_coherency(coherency_from_jones_vector(e));
}

// jxy / sqrt(jxx jyy); zero when one component carries no intensity.
inline cplx complex_degree_of_coherence(const CoherencyMatrix& j) {
  const double d = j.jxx * j.jyy;
  if (!(d > 0.0)) return {0.0, 0.0};
  return j.jxy / std::sqrt(d);
}

inline PolarizationReport degree_of_polarization(const CoherencyMatrix& j) {
  validate(j);
  const double tr = j.trace();
  if (!(tr > 0.0)) throw InvalidArgument("degree_of_polarization: zero trace");
  PolarizationReport r;
  r.i_tot = tr;
  r.p = std::sqrt(std::max(0.0, 1.0 - 4.0 * j.det() / (tr * tr)));
  r.i_pol = r.p * tr;
  const cplx jc = complex_degree_of_coherence(j);
  r.j_abs = std::abs(jc);
  r.beta_xy = std::arg(jc);
  return r;
}

// I_pol^2 = (Jxx - Jyy)^2 + 4 Jxy Jyx, invariant under frame rotations.
inline double polarized_intensity_squared(const CoherencyMatrix& j) {
  const double d = j.jxx - j.jyy;
  return d * d + 4.0 * std::norm(j.jxy);
}

// ---------------------------------------------------------------------------
// Frame rotations

inline Complex2Matrix rotation_matrix(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {c, s, -s, c};
}

// J' = R(phi) J R(-phi)
inline CoherencyMatrix rotate_coherency(const CoherencyMatrix& j, double phi) {
  const Complex2Matrix r = rotation_matrix(phi);
  return CoherencyMatrix::from_matrix(r * j.as_matrix() * r.transpose());
}

// ---------------------------------------------------------------------------
// Natural plus fully polarized split

// Symmetric reflection T(chi) = [[cos, sin], [sin, -cos]], its own inverse.
inline Complex2Matrix orientation_matrix(double chi) {
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {c, s, s, -c};
}

struct WienerDecomposition {
  double d2 = 0.0;  // natural intensity per component
  double a2 = 0.0;
  double b2 = 0.0;
  double ab = 0.0;  // A B = Im Jxy
  double chi = 0.0;

  CoherencyMatrix natural() const { return {d2, d2, {}}; }
  CoherencyMatrix polarized() const { return {a2, b2, cplx{0.0, -ab}}; }
  // J_tot = J_natural + J_pol, expressed in the principal frame.
  CoherencyMatrix total() const { return {a2 + d2, b2 + d2, cplx{0.0, -ab}}; }
  double i_pol() const { return a2 + b2; }
};

inline WienerDecomposition wiener_decompose(const CoherencyMatrix& j) {
  validate(j);
  WienerDecomposition w;
  const double y = 2.0 * j.jxy.real();
  const double x = j.jxx - j.jyy;
  const double scale = std::max(1.0, j.trace());
  double chi = 0.0;
  if (std::abs(x) > 1e-15 * scale || std::abs(y) > 1e-15 * scale) {
    chi = 0.5 * std::atan2(y, x);
    if (chi < 0.0) chi += pi;
    if (chi >= pi) chi -= pi;
  }
  w.chi = chi;

  const double tr = j.trace();
  const double disc = std::sqrt(std::max(0.0, polarized_intensity_squared(j)));
  w.d2 = std::max(0.0, 0.5 * (tr - disc));

  const double c = std::cos(chi);
  const double s = std::sin(chi);
  const double g = j.jxy.real();
  const double xx = j.jxx * c * c + 2.0 * g * c * s + j.jyy * s * s;
  const double yy = j.jxx * s * s - 2.0 * g * c * s + j.jyy * c * c;
  w.a2 = std::max(0.0, xx - w.d2);
  w.b2 = std::max(0.0, yy - w.d2);
  w.ab = j.jxy.imag();
  return w;
}

// |j| = P sqrt[(1 - c^2) / (1 - P^2 c^2)] with c^2 = cos^2(2 beta) cos^2(2 chi).
inline double partial_coherence_profile(double beta, double chi, double p) {
  validate(EllipseAngles{beta, chi});
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("partial_coherence_profile: p outside [0, 1]");
  const double cb = std::cos(2.0 * beta);
  const double cc = std::cos(2.0 * chi);
  const double c2 = cb * cb * cc * cc;
  const double den = 1.0 - p * p * c2;
  if (den <= 1e-300) return 0.0;
  return p * std::sqrt((1.0 - c2) / den);
}

// ---------------------------------------------------------------------------
// Polarization states as Poincare points

// e(beta, chi) on the circular basis (e_RC, e_LC).
inline Complex2Vector polarization_state_from_angles(const EllipseAngles& a) {
  validate(a);
  const double c = std::cos(a.beta);
  const double s = std::sin(a.beta);
  return {(c + s) / std::sqrt(2.0), std::polar((c - s) / std::sqrt(2.0), 2.0 * a.chi)};
}

// e_RC = (e_HL - i e_VL)/sqrt 2 and e_LC = (e_HL + i e_VL)/sqrt 2.
inline Complex2Vector circular_to_linear(const Complex2Vector& circ) {
  const double r = 1.0 / std::sqrt(2.0);
  return {r * (circ.c0 + circ.c1), r * (-kI * circ.c0 + kI * circ.c1)};
}

inline Complex2Vector linear_to_circular(const Complex2Vector& lin) {
  const double r = 1.0 / std::sqrt(2.0);
  return {r * (lin.c0 + kI * lin.c1), r * (lin.c0 - kI * lin.c1)};
}

// Unit Poincare direction (S1, S2, S3)/S0 of a circular-basis state.
inline Vec3 poincare_vector(const Complex2Vector& circ) { return bloch_vector(QuantumState{circ}.normalized()); }

inline Vec3 poincare_direction(const StokesVector& s) {
  const double n = s.polarized_intensity();
  if (!(n > 0.0)) throw DegenerateInput("poincare_direction: unpolarized beam");
  return {s.s1 / n, s.s2 / n, s.s3 / n};
}

}  // namespace qpol
