#include "test_util.hpp"

#include "tvd/distributions.hpp"
#include "tvd/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace tvd;

namespace {

// Gauss-Jordan inverse and determinant, independent of the Cholesky path.
std::pair<DenseMatrix, double> inverse_and_det(DenseMatrix a)
{
  const std::size_t n = a.rows();
  DenseMatrix inv = DenseMatrix::identity(n);
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c)))
        piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(c, k), a(piv, k));
        std::swap(inv(c, k), inv(piv, k));
      }
      det = -det;
    }
    const double d = a(c, c);
    det *= d;
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= d;
      inv(c, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r)
      if (r != c) {
        const double f = a(r, c);
        for (std::size_t k = 0; k < n; ++k) {
          a(r, k) -= f * a(c, k);
          inv(r, k) -= f * inv(c, k);
        }
      }
  }
  return {inv, det};
}

double quad_form(const DenseMatrix& m, const std::vector<double>& v)
{
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      s += v[i] * m(i, j) * v[j];
  return s;
}

double trapezoid_mass(const Distribution& d, double a, double b, std::size_t n)
{
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = a + h * static_cast<double>(i);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * std::exp(d.log_density(std::span<const double>(&x, 1)));
  }
  return s * h;
}

double at(const Distribution& d, double x) { return d.log_density(std::span<const double>(&x, 1)); }

} // namespace

TEST(Sample, Deterministic)
{
  const GaussianParams g({1.0, 2.0}, DenseMatrix::identity(2));
  const Dataset a = sample_gaussian(g, 3, 99);
  const Dataset b = sample_gaussian(g, 3, 99);
  EXPECT_EQ(a.x, b.x);
}

TEST(Sample, StandardNormalMean)
{
  const Dataset d = sample_gaussian(GaussianParams({0.0, 0.0}, DenseMatrix::identity(2)), 100000, 1);
  for (std::size_t j = 0; j < 2; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      s += d.x(i, j);
    EXPECT_NEAR(s / static_cast<double>(d.size()), 0.0, 0.02);
  }
}

TEST(Sample, ShiftedCovariance)
{
  const std::size_t n = 10000;
  const Dataset d = sample_gaussian(GaussianParams({5.0, 5.0}, DenseMatrix::identity(2)), n, 2);
  double m[2] = {0, 0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      m[j] += d.x(i, j) / n;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        c += (d.x(i, a) - m[a]) * (d.x(i, b) - m[b]);
      EXPECT_NEAR(c / (n - 1), a == b ? 1.0 : 0.0, 0.05);
    }
}

TEST(Sample, CorrelatedCovariance)
{
  const DenseMatrix cov = DenseMatrix::from_rows({{2.0, 0.8}, {0.8, 1.0}});
  const std::size_t n = 100000;
  const Dataset d = sample_gaussian(GaussianParams({0.0, 0.0}, cov), n, 3);
  double c01 = 0.0, c00 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c01 += d.x(i, 0) * d.x(i, 1) / n;
    c00 += d.x(i, 0) * d.x(i, 0) / n;
  }
  EXPECT_NEAR(c01, 0.8, 0.03);
  EXPECT_NEAR(c00, 2.0, 0.05);
}

TEST(Sample, UnivariateFamiliesStayInSupport)
{
  const Dataset e = sample(Distribution::exponential(1.0), 1000, 4);
  const Dataset b = sample(Distribution::beta(0.5, 0.5), 1000, 5);
  for (std::size_t i = 0; i < 1000; ++i) {
    EXPECT_GT(e.x(i, 0), 0.0);
    EXPECT_GT(b.x(i, 0), 0.0);
    EXPECT_LT(b.x(i, 0), 1.0);
  }
}

TEST(LogDensity, Examples)
{
  EXPECT_NEAR(at(Distribution::normal(0, 1), 0.0), -0.5 * std::log(2 * std::numbers::pi), 1e-14);
  EXPECT_NEAR(at(Distribution::exponential(2.0), 1.0), std::log(2.0) - 2.0, 1e-14);
  EXPECT_NEAR(at(Distribution::beta(2, 2), 0.5), std::log(1.5), 1e-13);
  EXPECT_NEAR(at(Distribution::gamma(3, 2), 1.5), std::log(8.0 / 2.0 * 1.5 * 1.5 * std::exp(-3.0)), 1e-13);
}

TEST(LogDensity, OutsideSupport)
{
  EXPECT_EQ(at(Distribution::exponential(1.0), -1.0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(at(Distribution::beta(2, 2), 1.0), -std::numeric_limits<double>::infinity());
  const double x = -0.5;
  EXPECT_THROW(Distribution::gamma(2, 1).log_density_strict(std::span<const double>(&x, 1)), Error);
}

TEST(LogDensity, UnivariateDensitiesIntegrateToOne)
{
  EXPECT_NEAR(trapezoid_mass(Distribution::normal(0.3, 2.0), -20, 20, 200000), 1.0, 1e-6);
  EXPECT_NEAR(trapezoid_mass(Distribution::exponential(1.5), 1e-15, 40, 400000), 1.0, 1e-6);
  EXPECT_NEAR(trapezoid_mass(Distribution::gamma(3, 1), 1e-15, 60, 400000), 1.0, 1e-6);
  EXPECT_NEAR(trapezoid_mass(Distribution::beta(2, 5), 0, 1, 200000), 1.0, 1e-6);
}

TEST(Parameters, InvalidRejected)
{
  EXPECT_THROW(Distribution::exponential(0.0), Error);
  EXPECT_THROW(Distribution::gamma(-1, 1), Error);
  EXPECT_THROW(Distribution::beta(1, 0), Error);
  EXPECT_THROW(Distribution::normal(0, -1), Error);
  EXPECT_THROW(MixturePair(Distribution::normal(0, 1), Distribution::gaussian(GaussianParams({0, 0}, DenseMatrix::identity(2)))),
               Error);
}

TEST(Mixture, LabelBalance)
{
  const MixturePair m(Distribution::normal(0, 1), Distribution::normal(1, 1));
  const Dataset d = sample_mixture(m, 10000, 5);
  std::size_t ones = 0;
  for (auto l : d.labels)
    ones += l;
  EXPECT_GE(ones, 4700u);
  EXPECT_LE(ones, 5300u);
  EXPECT_EQ(d.x, sample_mixture(m, 10000, 5).x);
  EXPECT_EQ(d.labels, sample_mixture(m, 10000, 5).labels);
}

TEST(Eta, Examples)
{
  const MixturePair same(Distribution::normal(0, 1), Distribution::normal(0, 1));
  for (double x : {-3.0, 0.0, 2.5})
    EXPECT_EQ(eta(same, std::span<const double>(&x, 1)), 0.5);
  const MixturePair m(Distribution::normal(1, 1), Distribution::normal(-1, 1));
  const double zero = 0.0, one = 1.0;
  EXPECT_NEAR(eta(m, std::span<const double>(&zero, 1)), 0.5, 1e-15);
  EXPECT_NEAR(eta(m, std::span<const double>(&one, 1)), 0.8808, 1e-4);
  EXPECT_NEAR(eta(m, std::span<const double>(&one, 1)), std::exp(2.0) / (1 + std::exp(2.0)), 1e-14);
}

TEST(Eta, ComplementAndRange)
{
  Rng rng(9);
  const MixturePair pq(Distribution::gamma(2, 1), Distribution::exponential(0.7));
  const MixturePair qp(pq.q, pq.p);
  for (int i = 0; i < 1000; ++i) {
    const double x = 10.0 * rng.uniform_pos();
    const double a = eta(pq, std::span<const double>(&x, 1));
    const double b = eta(qp, std::span<const double>(&x, 1));
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
    EXPECT_NEAR(a + b, 1.0, 1e-12);
  }
}

TEST(Eta, SupportEdges)
{
  const MixturePair m(Distribution::beta(2, 2), Distribution::normal(0, 1));
  const double outside = 1.5, inside = 0.5;
  EXPECT_EQ(eta(m, std::span<const double>(&outside, 1)), 0.0);
  EXPECT_GT(eta(m, std::span<const double>(&inside, 1)), 0.5);
  const MixturePair both_out(Distribution::beta(2, 2), Distribution::exponential(1));
  const double neg = -1.0;
  EXPECT_THROW(log_ratio(both_out, std::span<const double>(&neg, 1)), Error);
}

TEST(BayesClassify, Examples)
{
  const MixturePair m(Distribution::normal(1, 1), Distribution::normal(-1, 1));
  const double mid = 0.0, half = 0.5;
  EXPECT_EQ(bayes_classify(m, std::span<const double>(&mid, 1)), 0);
  EXPECT_EQ(bayes_classify(m, std::span<const double>(&half, 1)), 1);
  const MixturePair eg(Distribution::exponential(1), Distribution::gamma(2, 1));
  const double small = 0.1;
  EXPECT_EQ(bayes_classify(eg, std::span<const double>(&small, 1)), 1);
}

TEST(BayesClassify, AgreesWithEta)
{
  Rng rng(10);
  const MixturePair m(Distribution::gaussian(GaussianParams({0.5, -0.2}, DenseMatrix::from_rows({{1.5, 0.3}, {0.3, 0.8}}))),
                      Distribution::gaussian(GaussianParams({0.0, 0.0}, DenseMatrix::identity(2))));
  for (int i = 0; i < 10000; ++i) {
    const std::vector<double> x{3 * rng.normal(), 3 * rng.normal()};
    EXPECT_EQ(bayes_classify(m, x) == 1, eta(m, x) > 0.5);
  }
}

TEST(LogRatio, MatchesGaussianBayesRuleExpression)
{
  Rng rng(12);
  for (int pair = 0; pair < 10; ++pair) {
    const std::size_t p = 1 + rng.below(5);
    std::vector<double> mu1(p), mu2(p);
    for (std::size_t i = 0; i < p; ++i) {
      mu1[i] = rng.normal();
      mu2[i] = rng.normal();
    }
    const DenseMatrix s1 = test::random_spd(p, rng, 0.5);
    const DenseMatrix s2 = test::random_spd(p, rng, 0.5);
    const auto [inv1, det1] = inverse_and_det(s1);
    const auto [inv2, det2] = inverse_and_det(s2);
    const MixturePair m(Distribution::gaussian(GaussianParams(mu1, s1)), Distribution::gaussian(GaussianParams(mu2, s2)));
    for (int i = 0; i < 100; ++i) {
      std::vector<double> x(p), d1(p), d2(p);
      for (std::size_t j = 0; j < p; ++j) {
        x[j] = 2 * rng.normal();
        d1[j] = x[j] - mu1[j];
        d2[j] = x[j] - mu2[j];
      }
      const double rule = std::log(det2 / det1) + quad_form(inv2, d2) - quad_form(inv1, d1);
      EXPECT_NEAR(log_ratio(m, x), 0.5 * rule, 1e-9 * std::max(1.0, std::abs(rule)));
    }
  }
}

TEST(Sigmoid, StableAtExtremes)
{
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_EQ(sigmoid(800.0), 1.0);
  EXPECT_EQ(sigmoid(-800.0), 0.0);
  EXPECT_NEAR(sigmoid(2.0) + sigmoid(-2.0), 1.0, 1e-15);
}
