#include "test_util.hpp"

#include "tvd/error.hpp"
#include "tvd/experiments.hpp"
#include "tvd/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tvd;

TEST(NormalCdf, Values)
{
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.0), 0.8413447460685429, 1e-15);
  EXPECT_NEAR(normal_cdf(-8.0), 6.220960574271785e-16, 1e-25);
}

TEST(MonteCarlo, IdenticalIsExactlyZero)
{
  const MixturePair m(Distribution::gamma(2, 1), Distribution::gamma(2, 1));
  const auto est = mc_true_tv(m, 10000, 1);
  EXPECT_EQ(est.tv, 0.0);
  EXPECT_EQ(est.diag("se"), 0.0);
}

TEST(MonteCarlo, SeparatedNormals)
{
  const auto est = mc_true_tv(MixturePair(test::gauss1(1.0), test::gauss1(-1.0)), 1000000, 2);
  EXPECT_NEAR(est.tv, 0.6827, 0.002);
  EXPECT_EQ(est.method, "mc");
  EXPECT_EQ(est.diag("n_mc"), 1e6);
}

TEST(MonteCarlo, TwoSeedSelfConsistencyInFiveDimensions)
{
  const std::size_t p = 5;
  Rng rng(3);
  std::vector<double> mu(p);
  for (double& v : mu)
    v = rng.uniform();
  const NoiseMatrix e = make_noise_matrix(p, 0.1, 4);
  const MixturePair m(Distribution::gaussian(GaussianParams(std::vector<double>(p, 0.0), DenseMatrix::identity(p))),
                      Distribution::gaussian(GaussianParams(mu, DenseMatrix::identity(p) + e.e)));
  const auto a = mc_true_tv(m, 200000, 5);
  const auto b = mc_true_tv(m, 200000, 6);
  EXPECT_LE(std::abs(a.tv - b.tv), 2.0 * std::hypot(a.diag("se"), b.diag("se")));
}

TEST(MonteCarlo, DisjointSupports)
{
  const auto est = mc_true_tv(MixturePair(Distribution::beta(2, 2), Distribution::normal(5.0, 0.01)), 10000, 7);
  EXPECT_EQ(est.tv, 1.0);
}

TEST(Quadrature, Examples)
{
  EXPECT_NEAR(quadrature_tv_1d(test::gauss1(0.0), test::gauss1(0.0)), 0.0, 1e-8);
  EXPECT_NEAR(quadrature_tv_1d(test::gauss1(1.0), test::gauss1(-1.0)), 0.682689, 1e-6);
  EXPECT_NEAR(quadrature_tv_1d(test::gauss1(1.0), test::gauss1(-1.0)), 2.0 * test::phi(1.0) - 1.0, 1e-8);
}

TEST(Quadrature, ExponentialPairClosedForm)
{
  // densities cross at ln 2, where the CDFs are 1/2 and 3/4
  const double quad = quadrature_tv_1d(Distribution::exponential(1.0), Distribution::exponential(2.0));
  EXPECT_NEAR(quad, 0.25, 1e-7);
  const auto mc = mc_true_tv(MixturePair(Distribution::exponential(1.0), Distribution::exponential(2.0)), 200000, 8);
  EXPECT_LE(std::abs(quad - mc.tv), 3.0 * mc.diag("se"));
}

TEST(Quadrature, AgreesWithMonteCarloAcrossFamilies)
{
  const std::pair<Distribution, Distribution> pairs[] = {
      {Distribution::exponential(1.0), Distribution::gamma(3.0, 1.0)},
      {Distribution::beta(2, 5), Distribution::beta(5, 2)},
      {Distribution::gamma(2.0, 1.5), Distribution::normal(1.0, 0.5)},
      {Distribution::beta(2, 2), Distribution::exponential(3.0)},
      {test::gauss1(0.0, 1.0), test::gauss1(0.5, 3.0)},
  };
  std::uint64_t seed = 10;
  for (const auto& [p, q] : pairs) {
    const double quad = quadrature_tv_1d(p, q);
    const auto mc = mc_true_tv(MixturePair(p, q), 400000, seed++);
    EXPECT_LE(std::abs(quad - mc.tv), 4.0 * mc.diag("se") + 1e-6)
        << family_name(p.family()) << "-" << family_name(q.family()) << " quad=" << quad << " mc=" << mc.tv;
    EXPECT_GE(quad, 0.0);
    EXPECT_LE(quad, 1.0);
  }
}

TEST(Quadrature, RejectsMultivariate)
{
  const auto g = Distribution::gaussian(GaussianParams({0, 0}, DenseMatrix::identity(2)));
  EXPECT_THROW(quadrature_tv_1d(g, g), Error);
}

TEST(ClosedForm, Examples)
{
  const GaussianParams a({0.3}, DenseMatrix::identity(1));
  EXPECT_EQ(closed_form_tv_equal_cov(a, a), 0.0);
  EXPECT_NEAR(closed_form_tv_equal_cov(GaussianParams({1.0}, DenseMatrix::identity(1)),
                                       GaussianParams({-1.0}, DenseMatrix::identity(1))),
              0.6827, 1e-4);
  const double tv3 = closed_form_tv_equal_cov(GaussianParams({1.0, 1.0, 1.0}, DenseMatrix::identity(3)),
                                              GaussianParams({0.0, 0.0, 0.0}, DenseMatrix::identity(3)));
  EXPECT_NEAR(tv3, 2.0 * test::phi(std::sqrt(3.0) / 2.0) - 1.0, 1e-14);
  EXPECT_NEAR(tv3, 0.613524, 1e-6);
  // projection onto the mean difference gives the same 1-D problem
  EXPECT_NEAR(tv3, quadrature_tv_1d(test::gauss1(std::sqrt(3.0)), test::gauss1(0.0)), 1e-7);
}

TEST(ClosedForm, CovariancesMustMatch)
{
  try {
    closed_form_tv_equal_cov(GaussianParams({0.0}, DenseMatrix::identity(1)),
                             GaussianParams({1.0}, DenseMatrix::from_rows({{2.0}})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::covariances_differ);
  }
}

TEST(Oracles, TriangleAndSymmetry)
{
  Rng rng(20);
  for (int i = 0; i < 40; ++i) {
    const double m1 = 3.0 * rng.normal(), m2 = 3.0 * rng.normal();
    const double var = 0.2 + 3.0 * rng.uniform();
    const GaussianParams g1({m1}, DenseMatrix::from_rows({{var}}));
    const GaussianParams g2({m2}, DenseMatrix::from_rows({{var}}));
    const Distribution p = Distribution::gaussian(g1), q = Distribution::gaussian(g2);
    const double closed = closed_form_tv_equal_cov(g1, g2);
    const double quad = quadrature_tv_1d(p, q);
    const auto mc = mc_true_tv(MixturePair(p, q), 1000000, 100 + i);
    EXPECT_LE(std::abs(closed - quad), 1e-6);
    EXPECT_LE(std::abs(closed - mc.tv), 3.0 * (0.5 / std::sqrt(1e6)) * 3.0);

    EXPECT_EQ(closed_form_tv_equal_cov(g2, g1), closed);
    EXPECT_EQ(quadrature_tv_1d(q, p), quad);
    EXPECT_EQ(mc_true_tv(MixturePair(q, p), 1000, 100 + i).tv, mc_true_tv(MixturePair(p, q), 1000, 100 + i).tv);
    for (double v : {closed, quad, mc.tv}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Oracles, BayesRiskDuality)
{
  const Distribution p = test::gauss1(1.0), q = test::gauss1(-1.0);
  const std::size_t cells = 10000;
  const double lo = -10.0, hi = 10.0, h = (hi - lo) / cells;
  double overlap = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * h;
    const double a = std::exp(p.log_density(std::span<const double>(&x, 1)));
    const double b = std::exp(q.log_density(std::span<const double>(&x, 1)));
    overlap += std::min(a, b) * h;
  }
  EXPECT_NEAR(0.5 * overlap, 0.5 * (1.0 - quadrature_tv_1d(p, q)), 1e-4);
}
