/**
 * @file speed_limit.hpp
 * @brief Time-optimal Hamiltonians between two qubit states.
 *
 * Two constructions are provided:
 *  - synthesize_min_time: minimize the transit time at fixed eigenvalue gap
 *    E0 = E+ - E-. Works in the frame where the initial state is (1, 0);
 *    synthesize_min_time_rotated handles an arbitrary initial state.
 *  - synthesize_max_uncertainty: traceless H = E sigma-like operator built
 *    directly from |A> and |B> so that the energy spread in |A> is maximal.
 *
 * Every synthesis is gated by a forward-evolution check: exp(-i H t_min/hbar)|A>
 * must coincide with |B> up to global phase, otherwise NumericalGateFailure.
 */
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qpol/bloch_sphere.hpp"
#include "qpol/errors.hpp"
#include "qpol/numerics.hpp"

namespace qpol {

inline constexpr double kDefaultHbar = 1.0;
inline constexpr double kEndpointTol = 1e-10;

// |u><v|
inline Complex2Matrix outer(const QuantumState& u, const QuantumState& v) {
  return {u.c0() * std::conj(v.c0()), u.c0() * std::conj(v.c1()), u.c1() * std::conj(v.c0()),
          u.c1() * std::conj(v.c1())};
}

// Hermitian 2x2 operator with its Pauli form H = a0 I + a.sigma and spectrum
// E+- = a0 +- |a|.
class Hamiltonian2 {
 public:
  explicit Hamiltonian2(const Complex2Matrix& m) : m_(m) {
    if (!m.finite()) throw InvalidArgument("Hamiltonian2: non-finite matrix");
    if (!is_hermitian(m, 1e-12 * std::max(1.0, m.max_abs()))) {
      throw InvalidArgument("Hamiltonian2: matrix is not Hermitian");
    }
    a0_ = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const cplx off = 0.5 * (m(1, 0) + std::conj(m(0, 1)));
    a_ = {off.real(), off.imag(), 0.5 * (m(0, 0).real() - m(1, 1).real())};
  }

  const Complex2Matrix& matrix() const { return m_; }
  double trace_part() const { return a0_; }
  const Vec3& pauli_vector() const { return a_; }
  double strength() const { return norm(a_); }  // (E+ - E-) / 2
  double gap() const { return 2.0 * strength(); }
  double e_plus() const { return a0_ + strength(); }
  double e_minus() const { return a0_ - strength(); }

  // Unit rotation axis; +z for a multiple of the identity.
  Vec3 axis() const {
    const double s = strength();
    if (s == 0.0) return {0.0, 0.0, 1.0};
    return (1.0 / s) * a_;
  }

  QuantumState eigenvector_plus() const {
    const Vec3 n = axis();
    const double theta = std::atan2(std::hypot(n[0], n[1]), n[2]);
    const double phi = std::atan2(n[1], n[0]);
    return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
  }
  QuantumState eigenvector_minus() const { return orthogonal_complement(eigenvector_plus()); }

  Hamiltonian2 traceless() const {
    return Hamiltonian2{m_ - cplx{a0_, 0.0} * Complex2Matrix::identity()};
  }

  // Unitary exp(-i H t / hbar)
  Complex2Matrix propagator(double t, double hbar = kDefaultHbar) const {
    return matrix_exponential_su2(m_, t, hbar);
  }

 private:
  Complex2Matrix m_;
  double a0_ = 0.0;
  Vec3 a_{};
};

inline QuantumState evolve(const Hamiltonian2& h, const QuantumState& s, double t, double hbar = kDefaultHbar) {
  return h.propagator(t, hbar) * s;
}

// n samples of exp(-i H t / hbar)|s> on the closed interval [0, t_end].
inline std::vector<QuantumState> evolve_samples(const Hamiltonian2& h, const QuantumState& s, double t_end,
                                                std::size_t n, double hbar = kDefaultHbar) {
  if (n < 2) throw InvalidArgument("evolve_samples: need at least two samples");
  std::vector<QuantumState> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (k + 1 == n) ? t_end : t_end * static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(evolve(h, s, t, hbar));
  }
  return out;
}

// Delta E = sqrt(<H^2> - <H>^2) in the normalized state s, evaluated as
// ||(H - <H>) s|| / ||s|| which is nonnegative by construction.
inline double energy_uncertainty(const Hamiltonian2& h, const QuantumState& s) {
  const double n2 = s.amplitudes().norm_sq();
  if (!(n2 > 0.0)) throw InvalidArgument("energy_uncertainty: zero state vector");
  const Complex2Vector hs = h.matrix() * s.amplitudes();
  const double mean = inner(s.amplitudes(), hs).real() / n2;
  const Complex2Vector dev = hs - cplx{mean, 0.0} * s.amplitudes();
  return std::sqrt(dev.norm_sq() / n2);
}

// Matrix elements of H in the orthonormal frame (a, a_perp).
struct FrameElements {
  double h11 = 0.0;
  double h22 = 0.0;
  cplx h12{};
};

inline FrameElements frame_elements(const Hamiltonian2& h, const QuantumState& a) {
  const QuantumState an = a.normalized();
  const QuantumState ap = orthogonal_complement(an);
  const Complex2Vector ha = h.matrix() * an.amplitudes();
  const Complex2Vector hp = h.matrix() * ap.amplitudes();
  return {inner(an.amplitudes(), ha).real(), inner(ap.amplitudes(), hp).real(), inner(an.amplitudes(), hp)};
}

enum class Route { TimeMinimization, UncertaintyMaximization };

inline const char* to_string(Route r) {
  return r == Route::TimeMinimization ? "time_minimization" : "uncertainty_maximization";
}

struct SynthesisResult {
  Hamiltonian2 hamiltonian;
  double t_min = 0.0;
  double delta_e = 0.0;  // energy uncertainty in the initial state
  Route route = Route::TimeMinimization;
  double hbar = kDefaultHbar;
};

struct EfficiencyReport {
  double s0 = 0.0;  // geodesic angle between first and last sample
  double s = 0.0;   // summed angle along the sampled path
  double eta_qm = 0.0;
};

// Unitary V with V|a> = (1, 0) for normalized a.
inline Complex2Matrix working_basis_rotation(const QuantumState& a) {
  const QuantumState n = a.normalized();
  return {std::conj(n.c0()), std::conj(n.c1()), -n.c1(), n.c0()};
}

namespace detail {

inline void require_energy(double e, double hbar, const char* who) {
  if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument(std::string(who) + ": energy must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument(std::string(who) + ": hbar must be positive");
}

inline void gate_endpoint(const SynthesisResult& r, const QuantumState& a, const QuantumState& b, const char* who) {
  const QuantumState end = evolve(r.hamiltonian, a, r.t_min, r.hbar);
  const double f = phase_fidelity(end, b);
  if (!(f >= 1.0 - kEndpointTol)) {
    throw NumericalGateFailure(std::string(who) + ": forward evolution misses the target (fidelity " +
                               std::to_string(f) + ")");
  }
  const double scale = std::max(1.0, r.hamiltonian.gap());
  if (std::abs(r.delta_e - 0.5 * r.hamiltonian.gap()) > kClosedFormTol * scale) {
    throw NumericalGateFailure(std::string(who) + ": energy uncertainty is not maximal");
  }
}

}  // namespace detail

// Optimal H for |A> = (1, 0) -> |B> = (alpha, beta) at fixed gap e0:
// h12 = e0/2, h11 = h22 = -(e0/2) phase(alpha) / asin|beta|, off-diagonal
// phase phi = phase(beta) - phase(alpha) + pi/2, t_min = (2 hbar/e0) asin|beta|.
inline SynthesisResult synthesize_min_time(const QuantumState& a, const QuantumState& b, double e0,
                                           double hbar = kDefaultHbar) {
  detail::require_energy(e0, hbar, "synthesize_min_time");
  if (std::abs(a.c0() - 1.0) > kNormTol || std::abs(a.c1()) > kNormTol) {
    throw InvalidArgument(
        "synthesize_min_time: initial state must be (1, 0); rotate with working_basis_rotation or call "
        "synthesize_min_time_rotated");
  }
  if (!b.is_normalized(1e-10)) throw InvalidArgument("synthesize_min_time: target state is not normalized");
  const double beta_mod = std::min(1.0, std::abs(b.c1()));
  if (beta_mod <= kNormTol) throw DegenerateInput("synthesize_min_time: target equals the initial state");

  const double phase_alpha = std::abs(b.c0()) > 0.0 ? std::arg(b.c0()) : 0.0;
  const double phase_beta = std::arg(b.c1());
  const double arc = std::asin(beta_mod);
  const double h11 = -0.5 * e0 * phase_alpha / arc;
  const double phi = phase_beta - phase_alpha + pi / 2.0;
  const Complex2Matrix m{h11, std::polar(0.5 * e0, -phi), std::polar(0.5 * e0, phi), h11};

  SynthesisResult r{Hamiltonian2{m}, 2.0 * hbar / e0 * arc, 0.0, Route::TimeMinimization, hbar};
  r.delta_e = energy_uncertainty(r.hamiltonian, a);
  detail::gate_endpoint(r, a, b, "synthesize_min_time");
  return r;
}

// synthesize_min_time for an arbitrary initial state: solve in the frame
// where a = (1, 0) and rotate the Hamiltonian back, H = V^dagger H' V.
inline SynthesisResult synthesize_min_time_rotated(const QuantumState& a, const QuantumState& b, double e0,
                                                   double hbar = kDefaultHbar) {
  if (!a.is_normalized(1e-10) || !b.is_normalized(1e-10)) {
    throw InvalidArgument("synthesize_min_time_rotated: states must be normalized");
  }
  const Complex2Matrix v = working_basis_rotation(a);
  SynthesisResult local = synthesize_min_time(QuantumState{1.0, 0.0}, v * b, e0, hbar);
  SynthesisResult r{Hamiltonian2{v.adjoint() * local.hamiltonian.matrix() * v}, local.t_min, 0.0,
                    Route::TimeMinimization, hbar};
  r.delta_e = energy_uncertainty(r.hamiltonian, a);
  detail::gate_endpoint(r, a, b, "synthesize_min_time_rotated");
  return r;
}

// iE cot(theta/2) [ |B><A| / <A|B>  -  |A><B| / <B|A> ], theta = theta_AB.
// Singular for orthogonal endpoints.
inline Complex2Matrix hamiltonian_from_overlap(const QuantumState& a, const QuantumState& b, double e) {
  const QuantumState an = a.normalized();
  const QuantumState bn = b.normalized();
  const cplx ov = inner(an, bn);
  if (std::abs(ov) == 0.0) throw DegenerateInput("hamiltonian_from_overlap: orthogonal endpoints");
  const double theta = fubini_study_angle(an, bn);
  const Complex2Matrix k = (1.0 / ov) * outer(bn, an) - (1.0 / std::conj(ov)) * outer(an, bn);
  return cplx{0.0, e / std::tan(theta / 2.0)} * k;
}

// iE / sin(theta/2) [ |B'><A| - |A><B'| ] with B' = B rephased so that <A|B'>
// is real and nonnegative. Regular for every theta in (0, pi].
inline Complex2Matrix hamiltonian_from_phased_pair(const QuantumState& a, const QuantumState& b, double e) {
  const QuantumState an = a.normalized();
  QuantumState bn = b.normalized();
  const cplx ov = inner(an, bn);
  if (std::abs(ov) > 0.0) bn = QuantumState{(std::conj(ov) / std::abs(ov)) * bn.amplitudes()};
  const double theta = fubini_study_angle(an, bn);
  if (theta == 0.0) throw DegenerateInput("hamiltonian_from_phased_pair: identical endpoints");
  return cplx{0.0, e / std::sin(theta / 2.0)} * (outer(bn, an) - outer(an, bn));
}

// Overlaps below this use the phased-pair form instead of the overlap form.
inline constexpr double kOrthogonalCutoff = 1e-8;

inline SynthesisResult synthesize_max_uncertainty(const QuantumState& a, const QuantumState& b, double e,
                                                  double hbar = kDefaultHbar) {
  detail::require_energy(e, hbar, "synthesize_max_uncertainty");
  const QuantumState an = a.normalized();
  const QuantumState bn = b.normalized();
  const double overlap = std::abs(inner(an, bn));
  if (overlap >= 1.0 - kNormTol) throw DegenerateInput("synthesize_max_uncertainty: endpoints coincide");

  const Complex2Matrix m =
      overlap > kOrthogonalCutoff ? hamiltonian_from_overlap(an, bn, e) : hamiltonian_from_phased_pair(an, bn, e);
  // Drop the rounding-level anti-Hermitian residue.
  const Complex2Matrix herm = cplx{0.5, 0.0} * (m + m.adjoint());
  const double theta = fubini_study_angle(an, bn);

  SynthesisResult r{Hamiltonian2{herm}, hbar * theta / (2.0 * e), 0.0, Route::UncertaintyMaximization, hbar};
  r.delta_e = energy_uncertainty(r.hamiltonian, an);
  const double scale = std::max(1.0, e);
  if (std::abs(inner(an.amplitudes(), herm * an.amplitudes())) > kClosedFormTol * scale ||
      std::abs(r.delta_e - e) > kClosedFormTol * scale) {
    throw NumericalGateFailure("synthesize_max_uncertainty: <A|H|A> != 0 or Delta E != E");
  }
  detail::gate_endpoint(r, an, bn, "synthesize_max_uncertainty");
  return r;
}

// Closed-form point on the geodesic from a to b traversed at speed E / hbar:
//   [cos(Et/hbar) - cot(theta/2) sin(Et/hbar)] |A> + e^{i theta/2} sin(Et/hbar) / sin(theta/2) |B>
// with |B> carried in the phase convention <A|B> = cos(theta/2) e^{-i theta/2}.
inline QuantumState geodesic_state(const QuantumState& a, const QuantumState& b, double e, double t,
                                   double hbar = kDefaultHbar) {
  detail::require_energy(e, hbar, "geodesic_state");
  const QuantumState an = a.is_normalized(1e-15) ? a : a.normalized();
  const QuantumState bn = b.normalized();
  const cplx ov = inner(an, bn);
  const double overlap = std::abs(ov);
  if (overlap >= 1.0 - kNormTol) throw DegenerateInput("geodesic_state: endpoints coincide");
  const double theta = fubini_study_angle(an, bn);
  const double t_min = hbar * theta / (2.0 * e);
  if (!(t >= 0.0) || t > t_min * (1.0 + 1e-12)) throw InvalidArgument("geodesic_state: t outside [0, t_min]");

  const double half = theta / 2.0;
  const cplx align = overlap > 0.0 ? std::conj(ov) / overlap : cplx{1.0, 0.0};
  const Complex2Vector b_conv = (align * std::polar(1.0, -half)) * bn.amplitudes();

  const double w = e * t / hbar;
  const double coef_a = std::cos(w) - std::cos(half) / std::sin(half) * std::sin(w);
  const cplx coef_b = std::polar(std::sin(w) / std::sin(half), half);
  return QuantumState{cplx{coef_a, 0.0} * an.amplitudes() + coef_b * b_conv};
}

// eta_QM = s0 / s for a sampled path, with s the chained great-circle length.
inline EfficiencyReport efficiency(std::span<const QuantumState> trajectory) {
  if (trajectory.size() < 2) throw InvalidArgument("efficiency: need at least two samples");
  EfficiencyReport rep;
  for (std::size_t k = 1; k < trajectory.size(); ++k) rep.s += fubini_study_angle(trajectory[k - 1], trajectory[k]);
  rep.s0 = fubini_study_angle(trajectory.front(), trajectory.back());
  if (rep.s0 == 0.0) throw DegenerateInput("efficiency: initial and final samples coincide");
  rep.eta_qm = rep.s0 / rep.s;
  return rep;
}

}  // namespace qpol
