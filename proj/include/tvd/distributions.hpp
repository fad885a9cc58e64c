#pragma once

#include "tvd/dataset.hpp"
#include "tvd/linalg.hpp"
#include "tvd/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tvd {

//! Multivariate normal with a cached factor of its covariance.
class GaussianParams
{
public:
  GaussianParams(std::vector<double> mean, DenseMatrix cov);

  std::size_t dim() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const DenseMatrix& cov() const { return cov_; }
  const CholeskyFactor& chol() const { return chol_; }
  //! -(p/2) log(2 pi) - log_det / 2
  double log_norm_const() const { return log_norm_const_; }

  double log_density(std::span<const double> x) const;
  void sample(Rng& rng, std::span<double> out) const;

private:
  std::vector<double> mean_;
  DenseMatrix cov_;
  CholeskyFactor chol_;
  double log_norm_const_;
};

enum class Family
{
  gaussian,
  exponential,
  gamma,
  beta
};

const char* family_name(Family f);
std::optional<Family> parse_family(const std::string& name);

struct ExponentialDist { double rate; };
struct GammaDist { double shape; double rate; };
struct BetaDist { double a; double b; };

//! A Gaussian of any dimension, or one of the univariate exponential-family
//! members (exponential, gamma, beta). Log-densities outside the support are
//! -infinity.
class Distribution
{
public:
  static Distribution gaussian(GaussianParams g);
  static Distribution normal(double mean, double variance);
  static Distribution exponential(double rate);
  static Distribution gamma(double shape, double rate);
  static Distribution beta(double a, double b);

  Family family() const;
  std::size_t dim() const;

  double log_density(std::span<const double> x) const;
  //! Throws OutOfSupport where log_density would return -infinity.
  double log_density_strict(std::span<const double> x) const;
  bool in_support(std::span<const double> x) const;

  void sample(Rng& rng, std::span<double> out) const;

  //! Moments of one-dimensional distributions (mean and sd); used for
  //! integration ranges.
  double mean_1d() const;
  double sd_1d() const;

  const GaussianParams* as_gaussian() const { return std::get_if<GaussianParams>(&v_); }

private:
  using Variant = std::variant<GaussianParams, ExponentialDist, GammaDist, BetaDist>;
  explicit Distribution(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

//! P (real) and Q (synthetic) mixed with equal weight.
struct MixturePair
{
  Distribution p;
  Distribution q;

  MixturePair(Distribution p_dist, Distribution q_dist);
  std::size_t dim() const { return p.dim(); }
};

Dataset sample_gaussian(const GaussianParams& g, std::size_t n, std::uint64_t seed);
Dataset sample(const Distribution& d, std::size_t n, std::uint64_t seed);

//! Each row comes from P (label 1) or Q (label 0) by a fair coin.
Dataset sample_mixture(const MixturePair& m, std::size_t n, std::uint64_t seed);

//! log P(x) - log Q(x); may be +/-infinity at support edges. Throws BothZero
//! when x lies outside both supports.
double log_ratio(const MixturePair& m, std::span<const double> x);

//! P(x) / (P(x) + Q(x)), computed as sigmoid(log P - log Q).
double eta(const MixturePair& m, std::span<const double> x);

//! 1 when log P(x) > log Q(x), else 0 (ties go to 0).
int bayes_classify(const MixturePair& m, std::span<const double> x);

//! Numerically stable logistic function.
double sigmoid(double z);

} // namespace tvd
