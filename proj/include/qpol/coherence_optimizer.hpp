/**
 * @file coherence_optimizer.hpp
 * @brief Frame rotations that maximize the degree of coherence, and the
 *        row-by-row comparison with the time-optimal qubit evolution.
 *
 * Rotating the transverse frame by phi leaves I_tot, I_pol and P unchanged
 * while |j_xy| varies; its maximum P is reached when the two diagonal
 * intensities are equal. Equalization angles form a pi/2 lattice and the
 * representative in (-pi/4, pi/4] is returned.
 */
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qpol/bloch_sphere.hpp"
#include "qpol/errors.hpp"
#include "qpol/mueller_calculus.hpp"
#include "qpol/numerics.hpp"
#include "qpol/polarization.hpp"
#include "qpol/speed_limit.hpp"

namespace qpol {

inline constexpr double kUnpolarizedCutoff = 1e-12;

struct RotationSolution {
  double phi_opt = 0.0;
  double j_before = 0.0;
  double j_after = 0.0;
  double p = 0.0;
  double chi = 0.0;
  CoherencyMatrix rotated;
};

struct ConstraintLedger {
  double phi = 0.0;
  StokesVector before;
  StokesVector after;
  double i_pol_before = 0.0;
  double i_pol_after = 0.0;
  double s1_sq_before = 0.0;
  double s2_sq_before = 0.0;
  double s1_sq_after = 0.0;
  double s2_sq_after = 0.0;
};

namespace detail {

inline double wrap_half_open(double x, double lo, double width) {
  double r = std::fmod(x - lo, width);
  if (r < 0.0) r += width;
  return lo + r;
}

}  // namespace detail

// Solution record for the frame rotated by an arbitrary phi.
inline RotationSolution rotation_at(const CoherencyMatrix& j, double phi) {
  const PolarizationReport rep = degree_of_polarization(j);
  if (rep.p < kUnpolarizedCutoff) throw DegenerateInput("rotation: no polarized part");
  RotationSolution sol;
  sol.phi_opt = phi;
  sol.p = rep.p;
  sol.j_before = rep.j_abs;
  sol.rotated = rotate_coherency(j, phi);
  sol.j_after = std::abs(complex_degree_of_coherence(sol.rotated));
  sol.chi = wiener_decompose(j).chi;
  return sol;
}

// phi_opt from tan(2 phi) = (Jyy - Jxx) / (Jxy + Jyx), folded into (-pi/4, pi/4].
inline RotationSolution optimal_rotation(const CoherencyMatrix& j) {
  validate(j);
  const double scale = std::max(1.0, j.trace());
  const double num = j.jyy - j.jxx;
  const double den = 2.0 * j.jxy.real();
  double phi = 0.0;
  if (std::abs(num) > 1e-15 * scale || std::abs(den) > 1e-15 * scale) {
    double two_phi = std::atan2(num, den);
    if (two_phi > pi / 2.0) two_phi -= pi;
    if (two_phi <= -pi / 2.0) two_phi += pi;
    phi = 0.5 * two_phi;
  }
  RotationSolution sol = rotation_at(j, phi);
  if (std::abs(sol.rotated.jxx - sol.rotated.jyy) > kPolarizationTol * scale ||
      std::abs(sol.j_after - sol.p) > kPolarizationTol) {
    throw NumericalGateFailure("optimal_rotation: rotated frame does not equalize the diagonal");
  }
  return sol;
}

// eta_optics = |j_xy| / P
inline double optical_efficiency(const CoherencyMatrix& j) {
  const PolarizationReport rep = degree_of_polarization(j);
  if (rep.p < kUnpolarizedCutoff) throw DegenerateInput("optical_efficiency: no polarized part");
  return std::min(1.0, rep.j_abs / rep.p);
}

// Applies mueller_rotator(phi) and records the constrained quantities.
inline ConstraintLedger stokes_rotation_check(const StokesVector& s, double phi) {
  validate(s);
  ConstraintLedger led;
  led.phi = phi;
  led.before = s;
  led.after = apply(mueller_rotator(phi), s);
  led.i_pol_before = s.polarized_intensity();
  led.i_pol_after = led.after.polarized_intensity();
  led.s1_sq_before = s.s1 * s.s1;
  led.s2_sq_before = s.s2 * s.s2;
  led.s1_sq_after = led.after.s1 * led.after.s1;
  led.s2_sq_after = led.after.s2 * led.after.s2;
  const double scale = std::max(1.0, s.s0);
  const double plane_before = led.s1_sq_before + led.s2_sq_before;
  const double plane_after = led.s1_sq_after + led.s2_sq_after;
  if (std::abs(led.after.s0 - s.s0) > 1e-10 * scale || std::abs(led.after.s3 - s.s3) > 1e-10 * scale ||
      std::abs(plane_after - plane_before) > 1e-10 * scale * scale) {
    throw NumericalGateFailure("stokes_rotation_check: rotation is not rigid about the S3 axis");
  }
  return led;
}

struct BisectorReport {
  double chi = 0.0;
  double phi_opt = 0.0;
  double difference = 0.0;      // phi_opt - chi
  double lattice_offset = 0.0;  // difference reduced modulo pi/2 into [0, pi/2)
  std::optional<double> tan_product;
  // |x'.xi|^2, |x'.eta|^2, |y'.xi|^2, |y'.eta|^2
  std::array<double, 4> squared_cosines{};
  bool passes = false;
};

inline std::array<double, 4> bisector_squared_cosines(double phi, double chi) {
  const double cxx = std::cos(phi - chi);
  const double sxx = std::sin(phi - chi);
  return {cxx * cxx, sxx * sxx, sxx * sxx, cxx * cxx};
}

inline BisectorReport bisector_geometry(const CoherencyMatrix& j) {
  const RotationSolution sol = optimal_rotation(j);
  const StokesVector s = stokes_from_coherency(j);
  if (std::hypot(s.s1, s.s2) <= 1e-12 * std::max(1.0, s.s0)) {
    throw DegenerateInput("bisector_geometry: polarized part is circular, principal axes undefined");
  }
  BisectorReport r;
  r.chi = sol.chi;
  r.phi_opt = sol.phi_opt;
  r.difference = r.phi_opt - r.chi;
  r.lattice_offset = detail::wrap_half_open(r.difference, 0.0, pi / 2.0);
  const double t1 = std::tan(2.0 * r.phi_opt);
  const double t2 = std::tan(2.0 * r.chi);
  if (std::abs(std::cos(2.0 * r.phi_opt)) > 1e-12 && std::abs(std::cos(2.0 * r.chi)) > 1e-12) {
    r.tan_product = t1 * t2;
  }
  r.squared_cosines = bisector_squared_cosines(r.phi_opt, r.chi);
  bool ok = std::abs(r.lattice_offset - pi / 4.0) < 1e-8;
  for (double c : r.squared_cosines) ok = ok && std::abs(c - 0.5) < 1e-9;
  r.passes = ok;
  return r;
}

// ---------------------------------------------------------------------------
// Correspondence report

struct QuantumScenario {
  QuantumState a;
  QuantumState b;
  SynthesisResult synthesis;
  EfficiencyReport efficiency;
};

struct OpticalScenario {
  CoherencyMatrix j;
  RotationSolution rotation;
  ConstraintLedger ledger;
};

struct CorrespondenceTolerances {
  double closed_form = 1e-10;
  double optical = 1e-9;
  double efficiency = 1e-6;
  double pairing = 1e-9;
};

struct CorrespondenceRow {
  std::string table;
  std::string name;
  std::string quantum_relation;
  std::string optical_relation;
  double quantum_value = 0.0;
  double optical_value = 0.0;
  double target = 0.0;
  bool quantum_pass = false;
  bool optical_pass = false;
  bool pass() const { return quantum_pass && optical_pass; }
};

struct CorrespondenceReport {
  std::vector<CorrespondenceRow> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass()) return false;
    return !rows.empty();
  }
};

// Builds the optical half for a given frame angle.
inline OpticalScenario make_optical_scenario(const CoherencyMatrix& j, double phi) {
  return {j, rotation_at(j, phi), stokes_rotation_check(stokes_from_coherency(j), phi)};
}

inline OpticalScenario make_optical_scenario(const CoherencyMatrix& j) {
  const RotationSolution sol = optimal_rotation(j);
  return {j, sol, stokes_rotation_check(stokes_from_coherency(j), sol.phi_opt)};
}

namespace detail {

inline void check_pairing(const QuantumScenario& q, const OpticalScenario& o, double tol) {
  const double theta = fubini_study_angle(q.a, q.b);
  if (std::abs(q.efficiency.s0 - theta) > tol) {
    throw PairingError("correspondence_report: efficiency record does not join the scenario endpoints");
  }
  const double scale = std::max(1.0, o.j.trace());
  if (max_abs_diff(o.ledger.before, stokes_from_coherency(o.j)) > tol * scale) {
    throw PairingError("correspondence_report: constraint ledger was built from a different beam");
  }
  if (std::abs(o.rotation.p - degree_of_polarization(o.j).p) > tol) {
    throw PairingError("correspondence_report: rotation solution was built from a different beam");
  }
  if (std::abs(o.rotation.phi_opt - o.ledger.phi) > tol) {
    throw PairingError("correspondence_report: rotation and ledger use different angles");
  }
  if (max_abs_diff(o.rotation.rotated, rotate_coherency(o.j, o.rotation.phi_opt)) > tol * scale) {
    throw PairingError("correspondence_report: rotated coherency matrix does not match the angle");
  }
}

}  // namespace detail

inline CorrespondenceReport correspondence_report(const QuantumScenario& q, const OpticalScenario& o,
                                                  const CorrespondenceTolerances& tol = {}) {
  detail::check_pairing(q, o, tol.pairing);

  const QuantumState a = q.a.normalized();
  const Hamiltonian2& h = q.synthesis.hamiltonian;
  const FrameElements fe = frame_elements(h, a);
  const double gap = h.gap();
  if (!(gap > 0.0)) throw DegenerateInput("correspondence_report: Hamiltonian has a degenerate spectrum");
  const double gap2 = gap * gap;

  const CoherencyMatrix& jr = o.rotation.rotated;
  const double i_tot = o.j.trace();
  const double i_pol = o.ledger.i_pol_before;
  const double plane = o.ledger.s1_sq_before + o.ledger.s2_sq_before;
  const double ratio_tol = tol.optical;

  CorrespondenceReport rep;

  {
    CorrespondenceRow r{"I", "constraint_conservation", "(h11-h22)^2 + 4|h12|^2 = (E+ - E-)^2",
                        "(Jxx-Jyy)^2 + 4 Jxy Jyx = I_pol^2 conserved"};
    const double dh = fe.h11 - fe.h22;
    r.quantum_value = (dh * dh + 4.0 * std::norm(fe.h12)) / gap2;
    r.optical_value = i_pol > 0.0 ? polarized_intensity_squared(jr) / (i_pol * i_pol) : 0.0;
    r.target = 1.0;
    r.quantum_pass = std::abs(r.quantum_value - 1.0) <= tol.closed_form;
    r.optical_pass = i_pol > 0.0 && std::abs(r.optical_value - 1.0) <= ratio_tol &&
                     std::abs(o.ledger.i_pol_after - o.ledger.i_pol_before) <= tol.closed_form * std::max(1.0, i_tot);
    rep.rows.push_back(r);
  }
  {
    CorrespondenceRow r{"II", "equal_diagonals", "h11 = h22", "Jx'x' = Jy'y'"};
    r.quantum_value = std::abs(fe.h11 - fe.h22) / gap;
    r.optical_value = std::abs(jr.jxx - jr.jyy) / i_tot;
    r.target = 0.0;
    r.quantum_pass = r.quantum_value <= tol.closed_form;
    r.optical_pass = r.optical_value <= ratio_tol;
    rep.rows.push_back(r);
  }
  {
    CorrespondenceRow r{"II", "maximal_off_diagonal", "2|h12| / E0 = 1", "2|Jx'y'| / I_pol = 1"};
    r.quantum_value = 2.0 * std::abs(fe.h12) / gap;
    r.optical_value = i_pol > 0.0 ? 2.0 * std::abs(jr.jxy) / i_pol : 0.0;
    r.target = 1.0;
    r.quantum_pass = std::abs(r.quantum_value - 1.0) <= tol.closed_form;
    r.optical_pass = std::abs(r.optical_value - 1.0) <= ratio_tol;
    rep.rows.push_back(r);
  }
  {
    CorrespondenceRow r{"II", "maximal_dispersion", "Delta E = (E+ - E-)/2", "S1'^2 = 0 and S2'^2 maximal"};
    r.quantum_value = 2.0 * q.synthesis.delta_e / gap;
    r.optical_value = plane > 0.0 ? o.ledger.s2_sq_after / plane : 0.0;
    r.target = 1.0;
    r.quantum_pass = std::abs(r.quantum_value - 1.0) <= tol.closed_form;
    r.optical_pass = plane > 0.0 && o.ledger.s1_sq_after <= ratio_tol * std::max(1.0, i_tot * i_tot) &&
                     std::abs(r.optical_value - 1.0) <= ratio_tol;
    rep.rows.push_back(r);
  }
  {
    CorrespondenceRow r{"III", "equal_weights", "|<E+-|A>|^2 = 1/2", "|x'.xi|^2 = |x'.eta|^2 = 1/2"};
    const double wp = std::norm(inner(h.eigenvector_plus(), a));
    const double wm = std::norm(inner(h.eigenvector_minus(), a));
    r.quantum_value = std::max(std::abs(wp - 0.5), std::abs(wm - 0.5));
    double dev = 0.0;
    for (double c : bisector_squared_cosines(o.rotation.phi_opt, o.rotation.chi)) dev = std::max(dev, std::abs(c - 0.5));
    r.optical_value = dev;
    r.target = 0.0;
    r.quantum_pass = r.quantum_value <= tol.closed_form;
    r.optical_pass = r.optical_value <= ratio_tol;
    rep.rows.push_back(r);
  }
  {
    CorrespondenceRow r{"III", "unit_efficiency", "eta_QM = 1", "eta_optics = 1"};
    r.quantum_value = q.efficiency.eta_qm;
    r.optical_value = std::min(1.0, o.rotation.j_after / o.rotation.p);
    r.target = 1.0;
    r.quantum_pass = r.quantum_value >= 1.0 - tol.efficiency && r.quantum_value <= 1.0 + 1e-12;
    r.optical_pass = r.optical_value >= 1.0 - ratio_tol;
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace qpol
