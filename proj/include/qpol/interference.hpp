/**
 * @file interference.hpp
 * @brief Two-beam interference laws: partially coherent vibrations, the
 *        Pancharatnam superposition of polarized beams, and qubit branches.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "qpol/bloch_sphere.hpp"
#include "qpol/errors.hpp"
#include "qpol/numerics.hpp"
#include "qpol/polarization.hpp"

namespace qpol {

struct ClassicalInterferenceInput {
  CoherencyMatrix j;
  double theta = 0.0;    // analyzer angle
  double epsilon = 0.0;  // retardation applied to the y component
};

struct QuantumInterferenceInput {
  cplx a_amp{};
  cplx b_amp{};
  QuantumState state_a;
  QuantumState state_b;
};

struct AnalyzerIntensities {
  double ix = 0.0;
  double iy = 0.0;
};

inline AnalyzerIntensities analyzer_intensities(const ClassicalInterferenceInput& in) {
  validate(in.j);
  const double c = std::cos(in.theta);
  const double s = std::sin(in.theta);
  return {in.j.jxx * c * c, in.j.jyy * s * s};
}

// I = Ix + Iy + 2 sqrt(Ix Iy) |j_xy| cos(beta_xy - epsilon) for theta in [0, pi/2].
// The cross term carries the sign of cos(theta) sin(theta), so the same law
// holds for analyzer angles outside the first quadrant.
inline double classical_intensity(const ClassicalInterferenceInput& in) {
  const AnalyzerIntensities i = analyzer_intensities(in);
  const cplx jc = complex_degree_of_coherence(in.j);
  const double sign = std::cos(in.theta) * std::sin(in.theta) < 0.0 ? -1.0 : 1.0;
  return i.ix + i.iy + 2.0 * sign * std::sqrt(i.ix * i.iy) * std::abs(jc) * std::cos(std::arg(jc) - in.epsilon);
}

// V = 2 sqrt(Ix Iy) |j_xy| / (Ix + Iy)
inline double fringe_visibility(const ClassicalInterferenceInput& in) {
  const AnalyzerIntensities i = analyzer_intensities(in);
  const double sum = i.ix + i.iy;
  if (!(sum > 0.0)) throw DegenerateInput("fringe_visibility: analyzer passes no light");
  return 2.0 * std::sqrt(i.ix * i.iy) * std::abs(complex_degree_of_coherence(in.j)) / sum;
}

// I_C = I_A + I_B + 2 sqrt(I_A I_B) cos(theta/2) cos(delta)
inline double pancharatnam_intensity(double i_a, double i_b, double theta_poincare, double delta) {
  if (!(i_a >= 0.0) || !(i_b >= 0.0)) throw InvalidArgument("pancharatnam_intensity: negative intensity");
  if (!(theta_poincare >= 0.0 && theta_poincare <= pi)) {
    throw InvalidArgument("pancharatnam_intensity: Poincare separation outside [0, pi]");
  }
  return i_a + i_b + 2.0 * std::sqrt(i_a * i_b) * std::cos(theta_poincare / 2.0) * std::cos(delta);
}

namespace detail {

inline void validate_input(const QuantumInterferenceInput& in) {
  if (!in.state_a.is_normalized(1e-10) || !in.state_b.is_normalized(1e-10)) {
    throw InvalidArgument("quantum interference: branch states must be normalized");
  }
  if (!std::isfinite(std::abs(in.a_amp)) || !std::isfinite(std::abs(in.b_amp))) {
    throw InvalidArgument("quantum interference: non-finite amplitude");
  }
}

}  // namespace detail

// p = p_a + p_b + 2 sqrt(p_a p_b) |<A|B>| cos(phi_AB - (phi_a - phi_b))
inline double quantum_probability(const QuantumInterferenceInput& in) {
  detail::validate_input(in);
  const double pa = std::norm(in.a_amp);
  const double pb = std::norm(in.b_amp);
  const cplx ov = inner(in.state_a, in.state_b);
  const double phase = std::arg(ov) - (std::arg(in.a_amp) - std::arg(in.b_amp));
  return pa + pb + 2.0 * std::sqrt(pa * pb) * std::abs(ov) * std::cos(phase);
}

// <psi|psi> for psi = a|A> + b|B>, computed directly.
inline double superposition_norm(const QuantumInterferenceInput& in) {
  detail::validate_input(in);
  return (in.a_amp * in.state_a.amplitudes() + in.b_amp * in.state_b.amplitudes()).norm_sq();
}

struct AnalogyTriple {
  double j_abs = 0.0;
  double cos_poincare = 0.0;  // cos(theta_P / 2)
  double cos_bloch = 0.0;     // |<A|B>|
  bool pass = false;
};

// Two fully polarized beams of intensity S0/2 with Poincare directions n1, n2
// whose incoherent sum has Stokes vector s.
inline std::pair<Vec3, Vec3> equal_intensity_pair(const StokesVector& s) {
  const double p = std::clamp(s.polarized_intensity() / s.s0, 0.0, 1.0);
  Vec3 n{0.0, 0.0, 1.0};
  if (p > 0.0) n = poincare_direction(s);
  // Any unit vector orthogonal to n.
  Vec3 m = std::abs(n[0]) < 0.9 ? cross(n, Vec3{1.0, 0.0, 0.0}) : cross(n, Vec3{0.0, 1.0, 0.0});
  m = (1.0 / norm(m)) * m;
  const double half = std::acos(p);
  const Vec3 n1 = std::cos(half) * n + std::sin(half) * m;
  const Vec3 n2 = std::cos(half) * n - std::sin(half) * m;
  return {n1, n2};
}

// (|j_xy|, cos(theta_P/2), cos(theta_B/2)) for a beam in its equal-diagonal
// frame and a pair of qubit states.
inline AnalogyTriple analogy_triple(const CoherencyMatrix& j, const QuantumState& a, const QuantumState& b,
                                    double tol = kClosedFormTol) {
  validate(j);
  if (!(j.trace() > 0.0)) throw InvalidArgument("analogy_triple: zero intensity");
  if (std::abs(j.jxx - j.jyy) > kPolarizationTol * std::max(1.0, j.trace())) {
    throw InvalidArgument("analogy_triple: coherency matrix is not in the equal-diagonal frame");
  }
  if (!a.is_normalized(1e-10) || !b.is_normalized(1e-10)) throw InvalidArgument("analogy_triple: states must be normalized");
  AnalogyTriple t;
  t.j_abs = std::abs(complex_degree_of_coherence(j));
  const auto [n1, n2] = equal_intensity_pair(stokes_from_coherency(j));
  t.cos_poincare = std::cos(angle_between(n1, n2) / 2.0);
  t.cos_bloch = std::abs(inner(a, b));
  t.pass = std::abs(t.j_abs - t.cos_poincare) <= tol && std::abs(t.j_abs - t.cos_bloch) <= tol &&
           std::abs(t.cos_poincare - t.cos_bloch) <= tol;
  return t;
}

}  // namespace qpol
