#include "test_util.hpp"

#include "tvd/dise.hpp"
#include "tvd/error.hpp"
#include "tvd/features.hpp"
#include "tvd/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tvd;

namespace {

DenseMatrix draw(const Distribution& d, std::size_t n, std::uint64_t seed) { return sample(d, n, seed).x; }

double vec_norm(const std::vector<double>& v)
{
  double s = 0.0;
  for (double x : v)
    s += x * x;
  return std::sqrt(s);
}

} // namespace

TEST(Objective, ZeroBetaBalancedLabels)
{
  const DenseMatrix f = DenseMatrix::from_rows({{1, 0.3}, {1, -2.0}, {1, 5.0}, {1, 0.1}});
  const std::vector<std::uint8_t> y{1, 0, 1, 0};
  const auto lg = objective_and_gradient(std::vector<double>{0.0, 0.0}, f, y, 0.0);
  EXPECT_DOUBLE_EQ(lg.loss, 0.25);
  EXPECT_EQ(lg.grad[0], 0.0);
}

TEST(Objective, PenaltyOnly)
{
  const double lambda = 0.37;
  const auto lg = objective_and_gradient(std::vector<double>{1.0, 0.0, 0.0}, DenseMatrix(0, 3), {}, lambda);
  EXPECT_DOUBLE_EQ(lg.loss, lambda);
  EXPECT_DOUBLE_EQ(lg.grad[0], 2.0 * lambda);
}

TEST(Objective, DimensionMismatch)
{
  EXPECT_THROW(objective_and_gradient(std::vector<double>{0.0}, DenseMatrix(2, 2), std::vector<std::uint8_t>{0, 1}, 0.0),
               Error);
}

TEST(Objective, GradientMatchesCentralDifferences)
{
  Rng rng(21);
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + rng.below(30);
    const std::size_t n = 5 + rng.below(200);
    const DenseMatrix f = test::random_matrix(n, d, rng);
    std::vector<std::uint8_t> y(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::uint8_t>(rng.below(2));
      w[i] = 0.5 + rng.uniform();
    }
    std::vector<double> beta(d);
    for (double& b : beta)
      b = 0.5 * rng.normal();
    const std::span<const double> weights = trial % 2 ? std::span<const double>(w) : std::span<const double>();
    const auto lg = objective_and_gradient(beta, f, y, 0.01, weights);
    std::vector<double> fd(d), diff(d);
    for (std::size_t j = 0; j < d; ++j) {
      auto bp = beta, bm = beta;
      bp[j] += h;
      bm[j] -= h;
      fd[j] = (objective_and_gradient(bp, f, y, 0.01, weights).loss - objective_and_gradient(bm, f, y, 0.01, weights).loss) /
              (2 * h);
      diff[j] = fd[j] - lg.grad[j];
    }
    EXPECT_LE(vec_norm(diff), 1e-6 * std::max(vec_norm(lg.grad), 1e-3)) << "trial " << trial << " d=" << d;
  }
}

TEST(Lambda, AutoRule)
{
  DiseConfig cfg;
  cfg.lambda_c = 1.0;
  EXPECT_DOUBLE_EQ(resolve_lambda(cfg, 6, 20000), 6.0 * std::log(20000.0) / 20000.0);
  cfg.lambda_c = 0.5;
  EXPECT_DOUBLE_EQ(resolve_lambda(cfg, 6, 20000), 3.0 * std::log(20000.0) / 20000.0);
  cfg.lambda = 0.0;
  EXPECT_EQ(resolve_lambda(cfg, 6, 20000), 0.0);
}

TEST(Config, Validation)
{
  DiseConfig cfg;
  cfg.grad_tol = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.eval_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.lambda = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Fit, DegenerateLabels)
{
  Dataset d;
  d.x = DenseMatrix::from_rows({{0.0}, {1.0}});
  d.labels = {1, 1};
  try {
    fit({}, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_labels);
  }
}

TEST(Fit, IdenticalDistributionsGiveCoinFlipRisk)
{
  const auto g = test::gauss1(0.0);
  const Dataset train = stack_labeled(draw(g, 5000, 1), draw(g, 5000, 2));
  const Dataset eval = stack_labeled(draw(g, 5000, 3), draw(g, 5000, 4));
  const auto clf = fit({}, train);
  EXPECT_NEAR(evaluate(clf, eval).risk(), 0.5, 0.02);
}

TEST(Fit, RecoversBayesSignForSeparatedPair)
{
  const Dataset train = stack_labeled(draw(test::gauss1(3.0), 5000, 5), draw(test::gauss1(-3.0), 5000, 6));
  const auto clf = fit({}, train);
  int agree = 0, total = 0;
  for (double x = -5.0; x <= 5.0 + 1e-9; x += 0.01, ++total)
    agree += clf.classify(std::span<const double>(&x, 1)) == (x > 0.0 ? 1 : 0);
  EXPECT_GE(agree, 0.99 * total);
}

TEST(Fit, ConvergesAndIsDeterministic)
{
  for (std::size_t p : {1u, 3u, 6u, 10u}) {
    std::vector<double> mu(p, 0.5);
    const GaussianParams a(std::vector<double>(p, 0.0), DenseMatrix::identity(p));
    const GaussianParams b(mu, DenseMatrix::identity(p));
    const Dataset train = stack_labeled(sample_gaussian(a, 3000, 7).x, sample_gaussian(b, 3000, 8).x);
    const auto c1 = fit({}, train);
    const auto c2 = fit({}, train);
    EXPECT_TRUE(c1.converged) << p;
    EXPECT_LE(c1.iterations, 500u);
    EXPECT_LE(c1.grad_norm, 1e-7);
    EXPECT_EQ(c1.beta(), c2.beta());
    for (double b : c1.beta())
      EXPECT_TRUE(std::isfinite(b));
  }
}

TEST(Fit, MonotoneDescent)
{
  DiseConfig cfg;
  cfg.record_trace = true;
  const MixturePair m(Distribution::gaussian(GaussianParams({0.0, 0.0}, DenseMatrix::identity(2))),
                      Distribution::gaussian(GaussianParams({1.0, 0.5}, DenseMatrix::from_rows({{1.5, 0.2}, {0.2, 0.7}}))));
  const Dataset train = sample_mixture(m, 4000, 9);
  const auto clf = fit(cfg, train);
  ASSERT_GE(clf.loss_trace.size(), 2u);
  for (std::size_t i = 1; i < clf.loss_trace.size(); ++i)
    EXPECT_LE(clf.loss_trace[i], clf.loss_trace[i - 1]);
}

TEST(Estimate, IdenticalGaussians)
{
  const auto g = test::gauss1(0.0);
  const auto est = estimate_tv({}, draw(g, 10000, 10), draw(g, 10000, 11), 42);
  EXPECT_LE(est.tv, 0.03);
  EXPECT_GE(est.tv, 0.0);
  EXPECT_EQ(est.method, "dise");
}

TEST(Estimate, DisjointSupports)
{
  const auto est = estimate_tv({}, draw(test::gauss1(10.0), 1000, 12), draw(test::gauss1(-10.0), 1000, 13), 42);
  EXPECT_GE(est.tv, 0.999);
}

TEST(Estimate, ClampRecordsRawValue)
{
  const auto g = test::gauss1(0.0);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto est = estimate_tv({}, draw(g, 400, 100 + s), draw(g, 400, 200 + s), s);
    EXPECT_EQ(est.tv, clamp_unit(est.diag("raw_tv")));
    EXPECT_DOUBLE_EQ(est.diag("raw_tv"), 1.0 - 2.0 * est.risk);
  }
}

TEST(Estimate, TooFewSamples)
{
  EXPECT_THROW(estimate_tv({}, DenseMatrix::from_rows({{1.0}}), DenseMatrix::from_rows({{1.0}, {2.0}}), 1), Error);
}

TEST(Estimate, LowerBoundAgainstQuadrature)
{
  const std::pair<Distribution, Distribution> pairs[] = {
      {test::gauss1(0.5), test::gauss1(-0.5)},
      {test::gauss1(0.0, 1.0), test::gauss1(0.3, 2.5)},
      {Distribution::exponential(1.0), Distribution::gamma(3.0, 1.0)},
      {Distribution::beta(2, 5), Distribution::beta(5, 2)},
  };
  std::uint64_t seed = 30;
  for (const auto& [p, q] : pairs) {
    const double truth = quadrature_tv_1d(p, q);
    DiseConfig cfg;
    cfg.features = FeatureMapSpec::for_pair(MixturePair(p, q));
    const Dataset eval = stack_labeled(draw(p, 10000, seed + 1), draw(q, 10000, seed + 2));
    const auto est = estimate_tv(cfg, stack_labeled(draw(p, 5000, seed + 3), draw(q, 5000, seed + 4)), eval);
    const double sd = 2.0 * std::sqrt(0.25 / 10000.0 + 0.25 / 10000.0);
    EXPECT_LE(est.tv, truth + 3.0 * sd) << truth;
    seed += 10;
  }
}

TEST(Estimate, LabelSwapSymmetry)
{
  for (std::uint64_t s = 0; s < 5; ++s) {
    const DenseMatrix a = draw(test::gauss1(0.4, 1.2), 3000 + 17 * s, 40 + s);
    const DenseMatrix b = draw(test::gauss1(-0.2), 2500, 50 + s);
    const auto ab = estimate_tv({}, a, b, s);
    const auto ba = estimate_tv({}, b, a, s);
    EXPECT_LE(std::abs(ab.tv - ba.tv), 1e-12);
  }
}

TEST(Estimate, ProbabilityRecoveryImprovesWithSampleSize)
{
  const MixturePair m(test::gauss1(0.5), test::gauss1(-0.5));
  const auto max_gap = [&](std::size_t n, std::uint64_t seed) {
    const auto clf = fit({}, stack_labeled(draw(m.p, n, seed), draw(m.q, n, seed + 1)));
    double gap = 0.0;
    for (double x = -3.0; x <= 3.0 + 1e-9; x += 0.05)
      gap = std::max(gap, std::abs(sigmoid(clf.decision(std::span<const double>(&x, 1))) -
                                   eta(m, std::span<const double>(&x, 1))));
    return gap;
  };
  for (std::uint64_t t = 0; t < 10; ++t)
    EXPECT_LT(max_gap(100000, 1000 + 2 * t), max_gap(1000, 2000 + 2 * t)) << t;
}

TEST(Estimate, ExternalEvalDiagnostics)
{
  const auto g = test::gauss1(0.0);
  const Dataset train = stack_labeled(draw(g, 500, 60), draw(test::gauss1(1.0), 500, 61));
  const Dataset eval = stack_labeled(draw(g, 700, 62), draw(test::gauss1(1.0), 300, 63));
  const auto est = estimate_tv({}, train, eval);
  EXPECT_EQ(est.diag("eval_external"), 1.0);
  EXPECT_EQ(est.n_eval, 1000u);
  EXPECT_GT(est.diag("se"), 0.0);
}
