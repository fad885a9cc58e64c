#include "test_util.hpp"

#include "tvd/error.hpp"
#include "tvd/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tvd;

namespace {

ErrorCode code_of(const auto& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::config;
}

} // namespace

TEST(Cholesky, IdentityIsItsOwnFactor)
{
  EXPECT_EQ(cholesky(DenseMatrix::identity(3)).lower(), DenseMatrix::identity(3));
}

TEST(Cholesky, HandExpandedTwoByTwo)
{
  const auto f = cholesky(DenseMatrix::from_rows({{4, 2}, {2, 3}}));
  EXPECT_DOUBLE_EQ(f.lower()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(f.lower()(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(f.lower()(1, 0), 1.0);
  EXPECT_NEAR(f.lower()(1, 1), std::sqrt(2.0), 1e-15);
}

TEST(Cholesky, IndefiniteRejected)
{
  EXPECT_EQ(code_of([] { cholesky(DenseMatrix::from_rows({{1, 2}, {2, 1}})); }), ErrorCode::not_positive_definite);
}

TEST(Cholesky, AsymmetryRejected)
{
  EXPECT_EQ(code_of([] { cholesky(DenseMatrix::from_rows({{4, 2}, {2.1, 3}})); }), ErrorCode::not_symmetric);
}

TEST(Cholesky, NonSquareRejected)
{
  EXPECT_EQ(code_of([] { cholesky(DenseMatrix(2, 3)); }), ErrorCode::dimension_mismatch);
}

TEST(Cholesky, TinyAsymmetryIsSymmetrized)
{
  const auto f = cholesky(DenseMatrix::from_rows({{4, 2 + 1e-12}, {2, 3}}));
  EXPECT_NEAR(f.lower()(1, 0), 1.0, 1e-11);
}

TEST(Cholesky, RoundTripOnRandomSpd)
{
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    const DenseMatrix a = test::random_spd(n, rng, 1e-3);
    const DenseMatrix l = cholesky(a).lower();
    EXPECT_LT((l * l.transpose() - a).frobenius_norm() / a.frobenius_norm(), 1e-8);
  }
}

TEST(LogDet, Examples)
{
  EXPECT_EQ(log_det(cholesky(DenseMatrix::identity(4))), 0.0);
  const double d[] = {4.0, 9.0};
  EXPECT_NEAR(log_det(cholesky(DenseMatrix::diagonal(d))), std::log(36.0), 1e-12);
  EXPECT_NEAR(log_det(cholesky(DenseMatrix::from_rows({{4, 2}, {2, 3}}))), std::log(8.0), 1e-12);
}

TEST(LogDet, MatchesJacobiEigenvalues)
{
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const DenseMatrix a = test::random_spd(n, rng, 0.05);
    double expect = 0.0;
    for (double ev : test::jacobi_eigenvalues(a))
      expect += std::log(ev);
    EXPECT_NEAR(log_det(cholesky(a)), expect, 1e-8);
  }
}

TEST(Mahalanobis, Examples)
{
  const auto id = cholesky(DenseMatrix::identity(2));
  const std::vector<double> mu{0.3, -1.2};
  EXPECT_EQ(mahalanobis_sq(mu, mu, id), 0.0);
  EXPECT_EQ(mahalanobis_sq(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 0.0}, id), 1.0);
  const auto f = cholesky(DenseMatrix::from_rows({{4, 2}, {2, 3}}));
  EXPECT_NEAR(mahalanobis_sq(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 0.0}, f), 0.375, 1e-14);
}

TEST(Mahalanobis, IdentityIsSquaredEuclideanExactly)
{
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    const auto id = cholesky(DenseMatrix::identity(n));
    std::vector<double> x(n), mu(n);
    double expect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      mu[i] = rng.normal();
      expect += (x[i] - mu[i]) * (x[i] - mu[i]);
    }
    EXPECT_EQ(mahalanobis_sq(x, mu, id), expect);
  }
}

TEST(Mahalanobis, DimensionMismatch)
{
  const auto id = cholesky(DenseMatrix::identity(2));
  EXPECT_EQ(code_of([&] { mahalanobis_sq(std::vector<double>{1.0}, std::vector<double>{0.0, 0.0}, id); }),
            ErrorCode::dimension_mismatch);
}

TEST(CholeskySolve, SolvesLinearSystem)
{
  Rng rng(5);
  const DenseMatrix a = test::random_spd(6, rng);
  std::vector<double> b(6);
  for (double& v : b)
    v = rng.normal();
  const auto x = cholesky_solve(cholesky(a), b);
  for (std::size_t i = 0; i < 6; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 6; ++j)
      s += a(i, j) * x[j];
    EXPECT_NEAR(s, b[i], 1e-10);
  }
}
