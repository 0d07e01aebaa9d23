#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpol/bloch_sphere.hpp"

using namespace qpol;

TEST(QuantumState, DefaultIsBasisZeroAndPhaseIsKept) {
  const QuantumState s;
  EXPECT_EQ(s.c0(), cplx(1.0));
  EXPECT_EQ(s.c1(), cplx(0.0));
  const QuantumState t = s.with_phase(0.3);
  EXPECT_NEAR(std::arg(t.c0()), 0.3, 1e-15);
  EXPECT_TRUE(equal_up_to_phase(s, t));
}

TEST(QuantumState, NormalizeRejectsZero) {
  EXPECT_THROW(QuantumState(0.0, 0.0).normalized(), InvalidArgument);
  const QuantumState n = QuantumState(3.0, cplx{0.0, 4.0}).normalized();
  EXPECT_NEAR(n.norm(), 1.0, 1e-15);
}

TEST(BlochAngles, PolesAndEquator) {
  EXPECT_TRUE(equal_up_to_phase(state_from_angles({0.0, 0.0}), QuantumState(1.0, 0.0)));
  EXPECT_TRUE(equal_up_to_phase(state_from_angles({pi, 0.0}), QuantumState(0.0, 1.0)));
  const Vec3 v = bloch_vector(state_from_angles({pi / 2.0, pi / 2.0}));
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], 1.0, 1e-15);
  EXPECT_NEAR(v[2], 0.0, 1e-15);
}

TEST(BlochAngles, RoundTripAndRangeChecks) {
  oracle::Generator gen(21);
  for (int i = 0; i < 200; ++i) {
    const BlochAngles a{gen.uniform(0.01, pi - 0.01), gen.uniform(0.0, 2.0 * pi)};
    const BlochAngles b = angles_from_state(state_from_angles(a).with_phase(gen.uniform(0.0, 6.0)));
    EXPECT_NEAR(a.theta, b.theta, 1e-12);
    EXPECT_NEAR(a.phi, b.phi, 1e-12);
  }
  EXPECT_THROW(state_from_angles({-0.1, 0.0}), InvalidArgument);
  EXPECT_THROW(state_from_angles({0.1, 2.0 * pi}), InvalidArgument);
  EXPECT_EQ(angles_from_state(QuantumState(0.0, cplx{0.0, 1.0})).phi, 0.0);
}

TEST(BlochVector, MatchesSphericalCoordinates) {
  oracle::Generator gen(22);
  for (int i = 0; i < 100; ++i) {
    const BlochAngles a{gen.uniform(0.0, pi), gen.uniform(0.0, 2.0 * pi)};
    const Vec3 v = bloch_vector(state_from_angles(a));
    EXPECT_NEAR(v[0], std::sin(a.theta) * std::cos(a.phi), 1e-14);
    EXPECT_NEAR(v[1], std::sin(a.theta) * std::sin(a.phi), 1e-14);
    EXPECT_NEAR(v[2], std::cos(a.theta), 1e-14);
  }
  EXPECT_THROW(bloch_vector(QuantumState(2.0, 0.0)), InvalidArgument);
}

TEST(OrthogonalComplement, IsAntipodal) {
  oracle::Generator gen(23);
  for (int i = 0; i < 50; ++i) {
    const QuantumState s = gen.state();
    const QuantumState p = orthogonal_complement(s);
    EXPECT_NEAR(std::abs(inner(s, p)), 0.0, 1e-15);
    const Vec3 u = bloch_vector(s);
    const Vec3 w = bloch_vector(p);
    EXPECT_NEAR(dot(u, w), -1.0, 1e-14);
  }
}

TEST(FubiniStudy, HalfTheBlochAngle) {
  oracle::Generator gen(24);
  for (int i = 0; i < 200; ++i) {
    const QuantumState a = gen.state();
    const QuantumState b = gen.state();
    const double theta = fubini_study_angle(a, b);
    EXPECT_NEAR(theta, angle_between(bloch_vector(a), bloch_vector(b)), 1e-12);
    EXPECT_NEAR(std::cos(theta / 2.0), std::abs(inner(a, b)), 1e-12);
  }
}

TEST(FubiniStudy, OrthogonalAndIdenticalStates) {
  EXPECT_NEAR(fubini_study_angle(QuantumState(1.0, 0.0), QuantumState(0.0, 1.0)), pi, 1e-15);
  EXPECT_EQ(fubini_study_angle(QuantumState(1.0, 0.0), QuantumState(cplx{0.0, 1.0}, 0.0)), 0.0);
  // Nearly identical states keep relative precision.
  const double eps = 1e-9;
  const QuantumState b = QuantumState(std::cos(eps / 2.0), std::sin(eps / 2.0));
  EXPECT_NEAR(fubini_study_angle(QuantumState(1.0, 0.0), b), eps, 1e-22);
}
