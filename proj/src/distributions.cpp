#include "tvd/distributions.hpp"

#include "tvd/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tvd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << " must be positive and finite, got " << v;
    throw Error(ErrorCode::config, msg.str());
  }
}

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

} // namespace

double sigmoid(double z)
{
  if (z >= 0.0)
    return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

GaussianParams::GaussianParams(std::vector<double> mean, DenseMatrix cov)
  : mean_(std::move(mean))
  , cov_(std::move(cov))
  , chol_(cholesky(cov_))
  , log_norm_const_(0.0)
{
  if (cov_.rows() != mean_.size())
    throw Error(ErrorCode::dimension_mismatch, "mean and covariance sizes differ");
  if (mean_.empty() || mean_.size() > kMaxDim)
    throw Error(ErrorCode::dimension_mismatch, "dimension must be in [1, 64]");
  log_norm_const_ = -0.5 * static_cast<double>(dim()) * std::log(2.0 * std::numbers::pi)
                    - 0.5 * log_det(chol_);
}

double GaussianParams::log_density(std::span<const double> x) const
{
  return log_norm_const_ - 0.5 * mahalanobis_sq(x, mean_, chol_);
}

void GaussianParams::sample(Rng& rng, std::span<double> out) const
{
  double z[kMaxDim];
  const std::size_t p = dim();
  for (std::size_t i = 0; i < p; ++i)
    z[i] = rng.normal();
  chol_.multiply_lower({z, p}, out);
  for (std::size_t i = 0; i < p; ++i)
    out[i] += mean_[i];
}

const char* family_name(Family f)
{
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::exponential: return "exponential";
    case Family::gamma: return "gamma";
    case Family::beta: return "beta";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& name)
{
  if (name == "gaussian" || name == "gauss" || name == "normal")
    return Family::gaussian;
  if (name == "exponential" || name == "exp")
    return Family::exponential;
  if (name == "gamma")
    return Family::gamma;
  if (name == "beta")
    return Family::beta;
  return std::nullopt;
}

Distribution Distribution::gaussian(GaussianParams g) { return Distribution(std::move(g)); }

Distribution Distribution::normal(double mean, double variance)
{
  require_positive(variance, "variance");
  return Distribution(GaussianParams({mean}, DenseMatrix(1, 1, variance)));
}

Distribution Distribution::exponential(double rate)
{
  require_positive(rate, "rate");
  return Distribution(ExponentialDist{rate});
}

Distribution Distribution::gamma(double shape, double rate)
{
  require_positive(shape, "shape");
  require_positive(rate, "rate");
  return Distribution(GammaDist{shape, rate});
}

Distribution Distribution::beta(double a, double b)
{
  require_positive(a, "a");
  require_positive(b, "b");
  return Distribution(BetaDist{a, b});
}

Family Distribution::family() const
{
  return std::visit(overloaded{[](const GaussianParams&) { return Family::gaussian; },
                               [](const ExponentialDist&) { return Family::exponential; },
                               [](const GammaDist&) { return Family::gamma; },
                               [](const BetaDist&) { return Family::beta; }},
                    v_);
}

std::size_t Distribution::dim() const
{
  if (const auto* g = std::get_if<GaussianParams>(&v_))
    return g->dim();
  return 1;
}

bool Distribution::in_support(std::span<const double> x) const
{
  if (x.size() != dim())
    throw Error(ErrorCode::dimension_mismatch, "point dimension");
  return std::visit(overloaded{[](const GaussianParams&) { return true; },
                               [&](const ExponentialDist&) { return x[0] > 0.0; },
                               [&](const GammaDist&) { return x[0] > 0.0; },
                               [&](const BetaDist&) { return x[0] > 0.0 && x[0] < 1.0; }},
                    v_);
}

double Distribution::log_density(std::span<const double> x) const
{
  if (x.size() != dim())
    throw Error(ErrorCode::dimension_mismatch, "point dimension");
  return std::visit(
      overloaded{
          [&](const GaussianParams& g) { return g.log_density(x); },
          [&](const ExponentialDist& e) {
            return x[0] > 0.0 ? std::log(e.rate) - e.rate * x[0] : kNegInf;
          },
          [&](const GammaDist& g) {
            if (!(x[0] > 0.0))
              return kNegInf;
            return g.shape * std::log(g.rate) - std::lgamma(g.shape)
                   + (g.shape - 1.0) * std::log(x[0]) - g.rate * x[0];
          },
          [&](const BetaDist& b) {
            if (!(x[0] > 0.0 && x[0] < 1.0))
              return kNegInf;
            return std::lgamma(b.a + b.b) - std::lgamma(b.a) - std::lgamma(b.b)
                   + (b.a - 1.0) * std::log(x[0]) + (b.b - 1.0) * std::log1p(-x[0]);
          }},
      v_);
}

double Distribution::log_density_strict(std::span<const double> x) const
{
  if (!in_support(x)) {
    std::ostringstream msg;
    msg << "x = " << x[0] << " outside the " << family_name(family()) << " support";
    throw Error(ErrorCode::out_of_support, msg.str());
  }
  return log_density(x);
}

void Distribution::sample(Rng& rng, std::span<double> out) const
{
  std::visit(overloaded{[&](const GaussianParams& g) { g.sample(rng, out); },
                        [&](const ExponentialDist& e) { out[0] = rng.exponential(e.rate); },
                        [&](const GammaDist& g) { out[0] = rng.gamma(g.shape, g.rate); },
                        [&](const BetaDist& b) { out[0] = rng.beta(b.a, b.b); }},
             v_);
}

double Distribution::mean_1d() const
{
  return std::visit(overloaded{[](const GaussianParams& g) { return g.mean()[0]; },
                               [](const ExponentialDist& e) { return 1.0 / e.rate; },
                               [](const GammaDist& g) { return g.shape / g.rate; },
                               [](const BetaDist& b) { return b.a / (b.a + b.b); }},
                    v_);
}

double Distribution::sd_1d() const
{
  return std::visit(overloaded{[](const GaussianParams& g) { return std::sqrt(g.cov()(0, 0)); },
                               [](const ExponentialDist& e) { return 1.0 / e.rate; },
                               [](const GammaDist& g) { return std::sqrt(g.shape) / g.rate; },
                               [](const BetaDist& b) {
                                 const double s = b.a + b.b;
                                 return std::sqrt(b.a * b.b / (s * s * (s + 1.0)));
                               }},
                    v_);
}

MixturePair::MixturePair(Distribution p_dist, Distribution q_dist)
  : p(std::move(p_dist)), q(std::move(q_dist))
{
  if (p.dim() != q.dim())
    throw Error(ErrorCode::dimension_mismatch, "mixture components differ in dimension");
}

Dataset sample_gaussian(const GaussianParams& g, std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  Dataset out;
  out.x = DenseMatrix(n, g.dim());
  for (std::size_t i = 0; i < n; ++i)
    g.sample(rng, out.x.row(i));
  return out;
}

Dataset sample(const Distribution& d, std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  Dataset out;
  out.x = DenseMatrix(n, d.dim());
  for (std::size_t i = 0; i < n; ++i)
    d.sample(rng, out.x.row(i));
  return out;
}

Dataset sample_mixture(const MixturePair& m, std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  Dataset out;
  out.x = DenseMatrix(n, m.dim());
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool real = rng.uniform() < 0.5;
    out.labels[i] = real ? kRealLabel : kSynthLabel;
    (real ? m.p : m.q).sample(rng, out.x.row(i));
  }
  return out;
}

double log_ratio(const MixturePair& m, std::span<const double> x)
{
  const double lp = m.p.log_density(x);
  const double lq = m.q.log_density(x);
  if (lp == kNegInf && lq == kNegInf)
    throw Error(ErrorCode::both_zero, "point outside both supports");
  if (lp == kNegInf)
    return kNegInf;
  if (lq == kNegInf)
    return std::numeric_limits<double>::infinity();
  return lp - lq;
}

double eta(const MixturePair& m, std::span<const double> x)
{
  const double r = log_ratio(m, x);
  if (std::isinf(r))
    return r > 0 ? 1.0 : 0.0;
  return sigmoid(r);
}

int bayes_classify(const MixturePair& m, std::span<const double> x)
{
  return log_ratio(m, x) > 0.0 ? 1 : 0;
}

} // namespace tvd
