#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpol/interference.hpp"

using namespace qpol;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

QuantumInterferenceInput random_quantum(oracle::Generator& gen) {
  return {cplx{gen.gauss(), gen.gauss()}, cplx{gen.gauss(), gen.gauss()}, gen.state(), gen.state()};
}

}  // namespace

TEST(ClassicalIntensity, Examples) {
  oracle::Generator gen(91);
  for (int i = 0; i < 20; ++i) {
    const ClassicalInterferenceInput in{{1.5, 1.5, 0.0}, gen.uniform(0.0, pi), gen.uniform(-pi, pi)};
    const auto ii = analyzer_intensities(in);
    EXPECT_NEAR(classical_intensity(in), ii.ix + ii.iy, 1e-12);
  }
  // Fully polarized, beta_xy = epsilon: constructive maximum.
  const double beta = 0.6;
  const ClassicalInterferenceInput full{{2.0, 0.5, std::polar(1.0, beta)}, 0.4, beta};
  const auto ii = analyzer_intensities(full);
  const double want = std::pow(std::sqrt(ii.ix) + std::sqrt(ii.iy), 2.0);
  EXPECT_NEAR(classical_intensity(full), want, 1e-12);

  const ClassicalInterferenceInput worked{{3.0, 1.0, 1.0}, pi / 4.0, 0.0};
  EXPECT_NEAR(classical_intensity(worked), 3.0, 1e-12);
  EXPECT_NEAR(oracle::ensemble_intensity(worked.j, worked.theta, worked.epsilon), 3.0, 1e-12);
}

TEST(ClassicalIntensity, MatchesEnsembleAndIsNonNegative) {
  oracle::Generator gen(92);
  for (int i = 0; i < 1000; ++i) {
    const ClassicalInterferenceInput in{gen.coherency(), gen.uniform(0.0, pi), gen.uniform(-pi, pi)};
    const double v = classical_intensity(in);
    EXPECT_GE(v, -1e-12);
    if (i < 200) {
      EXPECT_NEAR(v, oracle::ensemble_intensity(in.j, in.theta, in.epsilon), 1e-10);
    }
  }
}

TEST(FringeVisibility, EqualsDegreeOfCoherenceAtEqualIntensities) {
  oracle::Generator gen(93);
  for (int i = 0; i < 500; ++i) {
    const CoherencyMatrix raw = gen.coherency(0.05, 1.0);
    const CoherencyMatrix j = optimal_rotation(raw).rotated;
    const ClassicalInterferenceInput in{j, pi / 4.0, 0.0};
    EXPECT_NEAR(fringe_visibility(in), std::abs(complex_degree_of_coherence(j)), 1e-10);
  }
  // Visibility is the normalized fringe amplitude over epsilon.
  const ClassicalInterferenceInput in{{3.0, 1.0, cplx{0.5, 0.7}}, 0.8, 0.0};
  const auto mx = grid_search_max([&](double e) { return classical_intensity({in.j, in.theta, e}); }, 0.0, 2.0 * pi, 2001);
  const auto mn = grid_search_max([&](double e) { return -classical_intensity({in.j, in.theta, e}); }, 0.0, 2.0 * pi, 2001);
  EXPECT_NEAR((mx.value + mn.value) / (mx.value - mn.value), fringe_visibility(in), 1e-9);
  EXPECT_THROW(fringe_visibility({{0.0, 1.0, 0.0}, 0.0, 0.0}), DegenerateInput);
}

TEST(PancharatnamIntensity, Examples) {
  EXPECT_NEAR(pancharatnam_intensity(1.3, 0.4, pi, 0.8), 1.7, 1e-15);
  EXPECT_NEAR(pancharatnam_intensity(1.0, 1.0, 0.0, 0.0), 4.0, 1e-15);
  EXPECT_NEAR(pancharatnam_intensity(1.0, 1.0, pi / 2.0, 0.0), 2.0 + std::sqrt(2.0), 1e-12);
  const QuantumInterferenceInput q{1.0, 1.0, QuantumState{1.0, 0.0}, QuantumState{r2, r2}};
  EXPECT_NEAR(quantum_probability(q), 2.0 + std::sqrt(2.0), 1e-12);
  EXPECT_THROW(pancharatnam_intensity(-1.0, 1.0, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(pancharatnam_intensity(1.0, 1.0, 4.0, 0.0), InvalidArgument);
}

TEST(PancharatnamIntensity, MatchesSuperposedJonesVectors) {
  // Two beams on the Poincare sphere separated by theta, phases chosen so that
  // the in-phase reference gives delta = 0.
  oracle::Generator gen(94);
  for (int i = 0; i < 100; ++i) {
    const QuantumState a = gen.state();
    const QuantumState b = gen.state();
    const double theta = angle_between(bloch_vector(a), bloch_vector(b));
    const cplx ov = inner(a, b);
    const QuantumState b_aligned = b.with_phase(-std::arg(ov));
    const double ia = gen.uniform(0.1, 2.0);
    const double ib = gen.uniform(0.1, 2.0);
    const double delta = gen.uniform(-pi, pi);
    const Complex2Vector sum =
        std::sqrt(ia) * a.amplitudes() + std::polar(std::sqrt(ib), delta) * b_aligned.amplitudes();
    EXPECT_NEAR(pancharatnam_intensity(ia, ib, theta, delta), sum.norm_sq(), 1e-10);
  }
}

TEST(QuantumProbability, Examples) {
  EXPECT_NEAR(quantum_probability({r2, r2, QuantumState{1.0, 0.0}, QuantumState{0.0, 1.0}}), 1.0, 1e-15);
  EXPECT_NEAR(quantum_probability({r2, r2, QuantumState{1.0, 0.0}, QuantumState{1.0, 0.0}}), 2.0, 1e-15);
  EXPECT_NEAR(quantum_probability({r2, std::polar(r2, pi), QuantumState{1.0, 0.0}, QuantumState{1.0, 0.0}}), 0.0,
              1e-15);
}

TEST(QuantumProbability, EqualsDirectNorm) {
  oracle::Generator gen(95);
  for (int i = 0; i < 1000; ++i) {
    const auto in = random_quantum(gen);
    EXPECT_NEAR(quantum_probability(in), superposition_norm(in), 1e-12 * std::max(1.0, superposition_norm(in)));
  }
  EXPECT_THROW(quantum_probability({1.0, 1.0, QuantumState{2.0, 0.0}, QuantumState{1.0, 0.0}}), InvalidArgument);
}

TEST(AnalogyTriple, Examples) {
  const auto same = analogy_triple({1.0, 1.0, 1.0}, QuantumState{1.0, 0.0}, QuantumState{1.0, 0.0});
  EXPECT_NEAR(same.j_abs, 1.0, 1e-12);
  EXPECT_NEAR(same.cos_poincare, 1.0, 1e-12);
  EXPECT_NEAR(same.cos_bloch, 1.0, 1e-12);
  EXPECT_TRUE(same.pass);

  const auto orth = analogy_triple({1.0, 1.0, 0.0}, QuantumState{1.0, 0.0}, QuantumState{0.0, 1.0});
  EXPECT_NEAR(orth.j_abs, 0.0, 1e-12);
  EXPECT_NEAR(orth.cos_bloch, 0.0, 1e-12);
  EXPECT_NEAR(orth.cos_poincare, 0.0, 1e-12);

  const auto mid = analogy_triple({1.0, 1.0, r2}, QuantumState{1.0, 0.0}, QuantumState{r2, r2});
  EXPECT_NEAR(mid.j_abs, r2, 1e-10);
  EXPECT_NEAR(mid.cos_poincare, r2, 1e-10);
  EXPECT_NEAR(mid.cos_bloch, r2, 1e-10);
  EXPECT_TRUE(mid.pass);
}

TEST(AnalogyTriple, PairSumsToBeamAndRejectsUnequalDiagonal) {
  oracle::Generator gen(96);
  for (int i = 0; i < 100; ++i) {
    const StokesVector s = gen.stokes(0.01, 0.99);
    const auto [n1, n2] = equal_intensity_pair(s);
    const double h = 0.5 * s.s0;
    const StokesVector sum{s.s0, h * (n1[0] + n2[0]), h * (n1[1] + n2[1]), h * (n1[2] + n2[2])};
    EXPECT_LT(max_abs_diff(sum, s), 1e-10);
  }
  EXPECT_THROW(analogy_triple({2.0, 1.0, 0.5}, QuantumState{1.0, 0.0}, QuantumState{1.0, 0.0}), InvalidArgument);
}
