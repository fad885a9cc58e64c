#include "tvd/oracle.hpp"

#include "tvd/error.hpp"
#include "tvd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

namespace tvd {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

std::vector<double> parameter_key(const Distribution& d)
{
  std::vector<double> key{static_cast<double>(d.family())};
  if (const GaussianParams* g = d.as_gaussian()) {
    key.insert(key.end(), g->mean().begin(), g->mean().end());
    key.insert(key.end(), g->cov().data().begin(), g->cov().data().end());
  } else {
    key.push_back(d.mean_1d());
    key.push_back(d.sd_1d());
  }
  return key;
}

} // namespace

TvEstimate mc_true_tv(const MixturePair& pair, std::size_t n_mc, std::uint64_t seed)
{
  // canonical pair order
  const bool swap = parameter_key(pair.q) < parameter_key(pair.p);
  const MixturePair m = swap ? MixturePair(pair.q, pair.p) : pair;
  Rng rng(seed);
  const McResult mc = mc_ratio_tv(
      m.dim(),
      [&](std::span<const double> x) { return m.p.log_density(x); },
      [&](std::span<const double> x) { return m.q.log_density(x); },
      [&](Rng& r, std::span<double> out) { m.p.sample(r, out); },
      [&](Rng& r, std::span<double> out) { m.q.sample(r, out); },
      n_mc,
      rng);
  TvEstimate est;
  est.method = "mc";
  est.tv = clamp_unit(mc.mean);
  est.n_eval = n_mc;
  est.diagnostics["raw_tv"] = mc.mean;
  est.diagnostics["se"] = mc.se;
  est.diagnostics["n_mc"] = static_cast<double>(n_mc);
  return est;
}

namespace {

using Integrand = std::function<double(double)>;

struct Simpson
{
  const Integrand& f;
  bool failed = false;

  double step(double a, double fa, double m, double fm, double b, double fb, double whole, double tol, int depth)
  {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    if (depth <= 0) {
      failed = true;
      return left + right + delta / 15.0;
    }
    return step(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
           + step(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
  }
};

// Uniform pre-partition followed by adaptive refinement on every cell, so
// narrow features between coarse nodes are not skipped.
double integrate(const Integrand& f, double a, double b, double tol, bool& failed)
{
  constexpr int kCells = 64;
  constexpr int kMaxDepth = 40;
  Simpson s{f};
  const double h = (b - a) / kCells;
  double total = 0.0;
  double x0 = a, f0 = f(a);
  for (int c = 0; c < kCells; ++c) {
    const double x1 = (c + 1 == kCells) ? b : a + h * (c + 1);
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += s.step(x0, f0, xm, fm, x1, f1, whole, tol / kCells, kMaxDepth);
    x0 = x1;
    f0 = f1;
  }
  failed = failed || s.failed;
  return total;
}

enum class Support
{
  real_line,
  positive,
  unit
};

Support support_of(const Distribution& d)
{
  switch (d.family()) {
    case Family::gaussian: return Support::real_line;
    case Family::exponential:
    case Family::gamma: return Support::positive;
    case Family::beta: return Support::unit;
  }
  return Support::real_line;
}

double density(const Distribution& d, double x)
{
  const double lp = d.log_density(std::span<const double>(&x, 1));
  return lp == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(lp);
}

// Range used to place the piece boundaries of the integration domain.
std::pair<double, double> cover(const Distribution& d)
{
  const double m = d.mean_1d();
  const double s = d.sd_1d();
  switch (support_of(d)) {
    case Support::real_line: return {m - 12.0 * s, m + 12.0 * s};
    case Support::positive: return {0.0, m + 40.0 * s};
    case Support::unit: return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

} // namespace

double quadrature_tv_1d(const Distribution& p, const Distribution& q, double tol)
{
  if (p.dim() != 1 || q.dim() != 1)
    throw Error(ErrorCode::dimension_mismatch, "quadrature oracle is one-dimensional");
  if (!(tol > 0.0))
    throw Error(ErrorCode::config, "tol must be positive");

  const auto [pa, pb] = cover(p);
  const auto [qa, qb] = cover(q);
  const double lo = std::min(pa, qa);
  const double hi = std::max(pb, qb);

  const Integrand half_abs = [&](double x) { return 0.5 * std::abs(density(p, x) - density(q, x)); };

  std::vector<double> cuts{lo};
  for (double c : {0.0, 1.0})
    if (c > lo && c < hi)
      cuts.push_back(c);
  cuts.push_back(hi);

  const bool any_unit = support_of(p) == Support::unit || support_of(q) == Support::unit;
  const bool any_positive = support_of(p) != Support::real_line || support_of(q) != Support::real_line;

  constexpr double kTransformSpan = 50.0;
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  bool failed = false;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (a == 0.0 && b == 1.0 && any_unit) {
      // x = logistic(u): dx = x (1 - x) du
      const Integrand g = [&](double u) {
        const double x = 1.0 / (1.0 + std::exp(-u));
        return half_abs(x) * x * (1.0 - x);
      };
      total += integrate(g, -kTransformSpan, kTransformSpan, piece_tol, failed);
    } else if (a == 0.0 && any_positive) {
      // x = exp(u): dx = x du
      const Integrand g = [&](double u) {
        const double x = std::exp(u);
        return half_abs(x) * x;
      };
      total += integrate(g, -kTransformSpan, std::log(b), piece_tol, failed);
    } else {
      total += integrate(half_abs, a, b, piece_tol, failed);
    }
  }
  if (failed) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not reach tol " << tol;
    throw Error(ErrorCode::tolerance_not_met, msg.str());
  }
  return clamp_unit(total);
}

double closed_form_tv_equal_cov(const GaussianParams& g1, const GaussianParams& g2)
{
  if (g1.dim() != g2.dim())
    throw Error(ErrorCode::dimension_mismatch, "Gaussian dimensions differ");
  const auto& c1 = g1.cov().data();
  const auto& c2 = g2.cov().data();
  double diff = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i)
    diff += (c1[i] - c2[i]) * (c1[i] - c2[i]);
  if (std::sqrt(diff) > 1e-12)
    throw Error(ErrorCode::covariances_differ, "closed form needs equal covariances");
  const double delta = std::sqrt(mahalanobis_sq(g1.mean(), g2.mean(), g1.chol()));
  return 2.0 * normal_cdf(0.5 * delta) - 1.0;
}

} // namespace tvd
