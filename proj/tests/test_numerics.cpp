#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "qpol/numerics.hpp"

using namespace qpol;

TEST(MatrixExponential, ZeroTimeIsIdentity) {
  oracle::Generator gen(11);
  for (int i = 0; i < 20; ++i) {
    const Complex2Matrix m = gen.complex_matrix();
    const Complex2Matrix h = cplx{0.5, 0.0} * (m + m.adjoint());
    EXPECT_LT(max_abs_diff(matrix_exponential_su2(h, 0.0), Complex2Matrix::identity()), 1e-15);
  }
}

TEST(MatrixExponential, FullPeriodOfSigmaZIsPlusIdentity) {
  // exp(-i sigma_z 2 pi) = cos(2 pi) I = +I
  EXPECT_LT(max_abs_diff(matrix_exponential_su2(pauli_z(), 2.0 * pi), Complex2Matrix::identity()), 1e-12);
  const double hbar = 0.37;
  EXPECT_LT(max_abs_diff(matrix_exponential_su2(pauli_z(), 2.0 * pi * hbar, hbar), Complex2Matrix::identity()),
            1e-12);
}

TEST(MatrixExponential, HalfSpinRotationByTwoPiIsMinusIdentity) {
  const Complex2Matrix minus_i = cplx{-1.0, 0.0} * Complex2Matrix::identity();
  EXPECT_LT(max_abs_diff(matrix_exponential_su2(cplx{0.5, 0.0} * pauli_z(), 2.0 * pi), minus_i), 1e-12);
  EXPECT_LT(max_abs_diff(matrix_exponential_su2(pauli_z(), pi), minus_i), 1e-12);
}

TEST(MatrixExponential, MatchesSeriesOracleOnRandomHermitian) {
  oracle::Generator gen(12);
  for (int i = 0; i < 100; ++i) {
    const Complex2Matrix m = gen.complex_matrix(2.0);
    const Complex2Matrix h = cplx{0.5, 0.0} * (m + m.adjoint());
    const double t = gen.uniform(-3.0, 3.0);
    const double hbar = gen.uniform(0.2, 2.0);
    const Complex2Matrix u = matrix_exponential_su2(h, t, hbar);
    EXPECT_LT(max_abs_diff(u, oracle::series_expm(h, t, hbar)), 1e-10);
    EXPECT_TRUE(is_unitary(u, 1e-12));
  }
}

TEST(MatrixExponential, RejectsNonHermitianGenerator) {
  const Complex2Matrix m{1.0, 2.0, 0.0, 1.0};
  EXPECT_THROW(matrix_exponential_su2(m, 1.0), InvalidArgument);
  EXPECT_THROW(matrix_exponential_su2(pauli_x(), 1.0, 0.0), InvalidArgument);
}

TEST(PauliAlgebra, ProductsAndCombination) {
  const Complex2Matrix xy = pauli_x() * pauli_y();
  EXPECT_LT(max_abs_diff(xy, kI * pauli_z()), 1e-15);
  const Complex2Matrix h = pauli_combination(0.5, {1.0, 2.0, 3.0});
  EXPECT_LT(max_abs_diff(h, cplx{0.5, 0.0} * Complex2Matrix::identity() + pauli_x() + cplx{2.0, 0.0} * pauli_y() +
                                cplx{3.0, 0.0} * pauli_z()),
            1e-15);
}

TEST(Kronecker, IndexConvention) {
  const Complex2Matrix a{1.0, 2.0, 3.0, 4.0};
  const Complex2Matrix b{0.0, 1.0, 1.0, 0.0};
  const Complex4Matrix k = kron(a, b);
  EXPECT_EQ(k(0, 1), cplx(1.0));
  EXPECT_EQ(k(1, 2), cplx(2.0));
  EXPECT_EQ(k(3, 2), cplx(4.0));
  EXPECT_EQ(k(2, 1), cplx(3.0));
}

TEST(GridSearch, FindsSmoothMaximumBeyondGridResolution) {
  const auto r = grid_search_max([](double x) { return -(x - 0.3217) * (x - 0.3217); }, 0.0, 1.0, 11);
  EXPECT_NEAR(r.argmax, 0.3217, 1e-7);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
}

TEST(GridSearch, HandlesMaximumAtBoundary) {
  const auto r = grid_search_max([](double x) { return x; }, -1.0, 2.0, 7);
  EXPECT_NEAR(r.argmax, 2.0, 1e-12);
}

TEST(GridSearch, NonFiniteValueReportsAbscissa) {
  try {
    grid_search_max([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x; }, 0.0, 1.0, 5);
    FAIL() << "expected NonFiniteValue";
  } catch (const NonFiniteValue& e) {
    EXPECT_DOUBLE_EQ(e.abscissa(), 0.75);
  }
}

TEST(GridSearch, RejectsBadInterval) {
  EXPECT_THROW(grid_search_max([](double x) { return x; }, 1.0, 0.0, 10), InvalidArgument);
  EXPECT_THROW(grid_search_max([](double x) { return x; }, 0.0, 1.0, 1), InvalidArgument);
}

TEST(TimeAverage, ExactForTrigonometricPolynomials) {
  EXPECT_NEAR(time_average_quadrature([](double t) { return std::cos(t) * std::cos(t); }, 2.0 * pi, 16), 0.5,
              1e-15);
  EXPECT_NEAR(time_average_quadrature([](double t) { return std::sin(3.0 * t) + 2.0; }, 2.0 * pi, 16), 2.0, 1e-14);
}

TEST(TimeAverage, RejectsBadArguments) {
  EXPECT_THROW(time_average_quadrature([](double) { return 1.0; }, 0.0, 16), InvalidArgument);
  EXPECT_THROW(time_average_quadrature([](double) { return 1.0; }, 1.0, 2), InvalidArgument);
  EXPECT_THROW(time_average_quadrature([](double) { return std::numeric_limits<double>::infinity(); }, 1.0, 8),
               NonFiniteValue);
}
