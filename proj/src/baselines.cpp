#include "tvd/baselines.hpp"

#include "tvd/dataset.hpp"
#include "tvd/error.hpp"
#include "tvd/knn.hpp"
#include "tvd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tvd {

namespace {

void require_same_dim(const DenseMatrix& a, const DenseMatrix& b)
{
  if (a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "real and synthetic dimensions differ");
}

GaussianParams fit_gaussian(const DenseMatrix& x)
{
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  std::vector<double> mean(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      mean[j] += x(i, j);
  for (auto& m : mean)
    m /= static_cast<double>(n);
  DenseMatrix cov(p, p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.row(i);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b)
        cov(a, b) += (r[a] - mean[a]) * (r[b] - mean[b]);
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a; b < p; ++b) {
      cov(a, b) /= static_cast<double>(n);
      cov(b, a) = cov(a, b);
    }
  try {
    return GaussianParams(mean, cov);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_positive_definite)
      throw;
  }
  double trace = 0.0;
  for (std::size_t a = 0; a < p; ++a)
    trace += cov(a, a);
  const double eps = 1e-8 * trace / static_cast<double>(p);
  for (std::size_t a = 0; a < p; ++a)
    cov(a, a) += eps;
  return GaussianParams(std::move(mean), std::move(cov));
}

TvEstimate finish_mc(const char* method, const McResult& mc, std::size_t n_mc)
{
  TvEstimate est;
  est.method = method;
  est.tv = clamp_unit(mc.mean);
  est.n_eval = n_mc;
  est.diagnostics["raw_tv"] = mc.mean;
  est.diagnostics["se"] = mc.se;
  est.diagnostics["n_mc"] = static_cast<double>(n_mc);
  return est;
}

double sample_sd(const DenseMatrix& x, std::size_t j)
{
  const std::size_t n = x.rows();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    m += x(i, j);
  m /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    ss += (x(i, j) - m) * (x(i, j) - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

std::size_t resolve_k(const KnnConfig& cfg, std::size_t base)
{
  if (cfg.k)
    return *cfg.k;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(base)))));
}

struct TermStats
{
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v)
  {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double se() const
  {
    if (n < 2)
      return 0.0;
    const double dn = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * sum / dn) / (dn - 1.0));
    return std::sqrt(var / dn);
  }
};

} // namespace

TvEstimate pe_estimate(const DenseMatrix& real,
                       const DenseMatrix& synth,
                       std::size_t n_mc,
                       std::uint64_t seed)
{
  require_same_dim(real, synth);
  const std::size_t p = real.cols();
  if (real.rows() < p + 2 || synth.rows() < p + 2)
    throw Error(ErrorCode::too_few_samples, "PE needs at least p + 2 rows per set");
  const GaussianParams gp = fit_gaussian(canonical_order(real));
  const GaussianParams gq = fit_gaussian(canonical_order(synth));
  Rng rng(seed);
  const McResult mc = mc_ratio_tv(
      p,
      [&](std::span<const double> x) { return gp.log_density(x); },
      [&](std::span<const double> x) { return gq.log_density(x); },
      [&](Rng& r, std::span<double> out) { gp.sample(r, out); },
      [&](Rng& r, std::span<double> out) { gq.sample(r, out); },
      n_mc,
      rng);
  return finish_mc("pe", mc, n_mc);
}

std::vector<double> silverman_bandwidths(const DenseMatrix& points)
{
  const std::size_t n = points.rows();
  const std::size_t p = points.cols();
  if (n < 2)
    throw Error(ErrorCode::too_few_samples, "KDE needs at least two rows");
  const double pd = static_cast<double>(p);
  const double factor = std::pow(4.0 / ((pd + 2.0) * static_cast<double>(n)), 1.0 / (pd + 4.0));
  std::vector<double> h(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double sd = sample_sd(points, j);
    if (!(sd > 0.0)) {
      std::ostringstream msg;
      msg << "column " << j << " has zero variance";
      throw Error(ErrorCode::zero_variance, msg.str());
    }
    h[j] = sd * factor;
  }
  return h;
}

KdeModel::KdeModel(const DenseMatrix& points) : KdeModel(points, silverman_bandwidths(canonical_order(points))) {}

KdeModel::KdeModel(const DenseMatrix& points, std::vector<double> bandwidths)
  : points_(canonical_order(points)), bandwidths_(std::move(bandwidths))
{
  const std::size_t p = points_.cols();
  if (bandwidths_.size() != p)
    throw Error(ErrorCode::dimension_mismatch, "one bandwidth per column");
  for (double h : bandwidths_)
    if (!(h > 0.0))
      throw Error(ErrorCode::zero_variance, "bandwidths must be positive");
  scaled_ = points_;
  for (std::size_t i = 0; i < scaled_.rows(); ++i)
    for (std::size_t j = 0; j < p; ++j)
      scaled_(i, j) /= bandwidths_[j];
  log_norm_ = -std::log(static_cast<double>(points_.rows()))
              - 0.5 * static_cast<double>(p) * std::log(2.0 * std::numbers::pi);
  for (double h : bandwidths_)
    log_norm_ -= std::log(h);
}

double KdeModel::log_density(std::span<const double> x) const
{
  const std::size_t p = dim();
  const std::size_t n = size();
  if (x.size() != p)
    throw Error(ErrorCode::dimension_mismatch, "KDE query dimension");
  double z[kMaxDim];
  for (std::size_t j = 0; j < p; ++j)
    z[j] = x[j] / bandwidths_[j];
  thread_local std::vector<double> expo;
  expo.resize(n);
  double best = -std::numeric_limits<double>::infinity();
  const double* base = scaled_.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = base + i * p;
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = row[j] - z[j];
      s += d * d;
    }
    expo[i] = -0.5 * s;
    best = std::max(best, expo[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += std::exp(expo[i] - best);
  return log_norm_ + best + std::log(acc);
}

void KdeModel::sample(Rng& rng, std::span<double> out) const
{
  const auto centre = points_.row(rng.below(points_.rows()));
  for (std::size_t j = 0; j < dim(); ++j)
    out[j] = centre[j] + bandwidths_[j] * rng.normal();
}

TvEstimate kde_estimate(const DenseMatrix& real,
                        const DenseMatrix& synth,
                        std::size_t n_mc,
                        std::uint64_t seed)
{
  require_same_dim(real, synth);
  if (real.cols() > kMaxDim)
    throw Error(ErrorCode::dimension_mismatch, "KDE dimension exceeds 64");
  const KdeModel kp(real);
  const KdeModel kq(synth);
  Rng rng(seed);
  const McResult mc = mc_ratio_tv(
      real.cols(),
      [&](std::span<const double> x) { return kp.log_density(x); },
      [&](std::span<const double> x) { return kq.log_density(x); },
      [&](Rng& r, std::span<double> out) { kp.sample(r, out); },
      [&](Rng& r, std::span<double> out) { kq.sample(r, out); },
      n_mc,
      rng);
  TvEstimate est = finish_mc("kde", mc, n_mc);
  est.diagnostics["bandwidth_real_0"] = kp.bandwidths()[0];
  est.diagnostics["bandwidth_synth_0"] = kq.bandwidths()[0];
  return est;
}

TvEstimate nnre_estimate(const DenseMatrix& real, const DenseMatrix& synth, const KnnConfig& cfg)
{
  require_same_dim(real, synth);
  const std::size_t n_real = real.rows();
  const std::size_t m_synth = synth.rows();
  if (n_real == 0 || m_synth == 0)
    throw Error(ErrorCode::too_few_samples, "NNRE needs both sets nonempty");
  const std::size_t k = resolve_k(cfg, m_synth);
  if (k == 0 || k > n_real + m_synth - 1)
    throw Error(ErrorCode::k_too_large, "k must be in [1, N + M - 1]");

  const DenseMatrix pool = vstack(canonical_order(real), canonical_order(synth));
  const double eta = static_cast<double>(m_synth) / static_cast<double>(n_real);
  TermStats stats;
  for (std::size_t i = 0; i < m_synth; ++i) {
    const std::size_t q = n_real + i;
    const auto nn = knn_query(pool, pool.row(q), k, q);
    std::size_t from_real = 0;
    for (const auto& nb : nn)
      from_real += nb.index < n_real;
    const std::size_t from_synth = k - from_real;
    stats.add(tv_generator(eta * static_cast<double>(from_real) / (static_cast<double>(from_synth) + 1.0)));
  }
  TvEstimate est;
  est.method = "nnre";
  const double raw = stats.mean();
  est.tv = clamp_unit(raw);
  est.n_eval = m_synth;
  est.diagnostics["raw_tv"] = raw;
  est.diagnostics["se"] = stats.se();
  est.diagnostics["k"] = static_cast<double>(k);
  est.diagnostics["eta"] = eta;
  return est;
}

TvEstimate ee_estimate(const DenseMatrix& real,
                       const DenseMatrix& synth,
                       const KnnConfig& cfg,
                       std::uint64_t seed)
{
  require_same_dim(real, synth);
  if (synth.rows() < 4)
    throw Error(ErrorCode::too_few_samples, "EE needs at least four synthetic rows");
  if (real.rows() == 0)
    throw Error(ErrorCode::too_few_samples, "EE needs real rows");

  Rng rng(seed);
  const DenseMatrix synth_c = canonical_order(synth);
  const auto synth_perm = random_permutation(synth_c.rows(), rng);
  const std::size_t n_eval = synth_c.rows() / 2;
  std::span<const std::size_t> sp(synth_perm);
  const DenseMatrix eval = select_rows(synth_c, sp.first(n_eval));
  const DenseMatrix ref_synth = select_rows(synth_c, sp.subspan(n_eval));
  const std::size_t m2 = ref_synth.rows();

  const DenseMatrix real_c = canonical_order(real);
  const auto real_perm = random_permutation(real_c.rows(), rng);
  const std::size_t m1 = std::min(m2, real_c.rows());
  const DenseMatrix ref_real = select_rows(real_c, std::span<const std::size_t>(real_perm).first(m1));

  const std::size_t k = resolve_k(cfg, n_eval);
  if (k == 0 || k > std::min(m1, m2))
    throw Error(ErrorCode::k_too_large, "k must be in [1, min(M1, M2)]");

  constexpr double kMinDistance = 1e-12;
  const double p = static_cast<double>(real.cols());
  const double log_size_ratio = std::log(static_cast<double>(m2)) - std::log(static_cast<double>(m1));
  std::size_t zero_distances = 0;
  TermStats stats;
  for (std::size_t i = 0; i < n_eval; ++i) {
    const auto q = eval.row(i);
    double rho1 = std::sqrt(knn_query(ref_real, q, k).back().dist_sq);
    double rho2 = std::sqrt(knn_query(ref_synth, q, k).back().dist_sq);
    if (rho1 < kMinDistance) {
      rho1 = kMinDistance;
      ++zero_distances;
    }
    if (rho2 < kMinDistance) {
      rho2 = kMinDistance;
      ++zero_distances;
    }
    const double ratio = std::exp(log_size_ratio + p * (std::log(rho2) - std::log(rho1)));
    stats.add(tv_generator(ratio));
  }
  TvEstimate est;
  est.method = "ee";
  const double raw = stats.mean();
  est.tv = clamp_unit(raw);
  est.n_eval = n_eval;
  est.diagnostics["raw_tv"] = raw;
  est.diagnostics["se"] = stats.se();
  est.diagnostics["k"] = static_cast<double>(k);
  est.diagnostics["m1"] = static_cast<double>(m1);
  est.diagnostics["m2"] = static_cast<double>(m2);
  est.diagnostics["zero_distances"] = static_cast<double>(zero_distances);
  return est;
}

} // namespace tvd
