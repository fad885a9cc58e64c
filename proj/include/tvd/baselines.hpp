#pragma once

#include "tvd/distributions.hpp"
#include "tvd/estimate.hpp"
#include "tvd/linalg.hpp"
#include "tvd/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tvd {

inline constexpr std::size_t kDefaultMcDraws = 100000;

//! Plug-in Gaussian fit per set (maximum likelihood, covariance divided by n),
//! then the Monte Carlo ratio under the fitted mixture.
TvEstimate pe_estimate(const DenseMatrix& real,
                       const DenseMatrix& synth,
                       std::size_t n_mc,
                       std::uint64_t seed);

//! Per-dimension Silverman rule h_j = sd_j * (4 / ((p + 2) n))^(1 / (p + 4)).
std::vector<double> silverman_bandwidths(const DenseMatrix& points);

//! Product-Gaussian kernel density estimate.
class KdeModel
{
public:
  //! Silverman bandwidths; throws ZeroVariance on a constant column.
  explicit KdeModel(const DenseMatrix& points);
  KdeModel(const DenseMatrix& points, std::vector<double> bandwidths);

  std::size_t dim() const { return bandwidths_.size(); }
  std::size_t size() const { return scaled_.rows(); }
  const std::vector<double>& bandwidths() const { return bandwidths_; }

  double log_density(std::span<const double> x) const;
  //! A random kernel centre plus bandwidth-scaled Gaussian noise.
  void sample(Rng& rng, std::span<double> out) const;

private:
  DenseMatrix points_;
  // points divided by the bandwidth, column by column
  DenseMatrix scaled_;
  std::vector<double> bandwidths_;
  double log_norm_ = 0.0;
};

TvEstimate kde_estimate(const DenseMatrix& real,
                        const DenseMatrix& synth,
                        std::size_t n_mc,
                        std::uint64_t seed);

//! k for the nearest-neighbour estimators; empty means the square-root rule.
struct KnnConfig
{
  std::optional<std::size_t> k;
};

//! g(t) = |t - 1| / 2
inline double tv_generator(double t) { return 0.5 * (t > 1.0 ? t - 1.0 : 1.0 - t); }

//! Nearest-neighbour ratio estimate: for each synthetic point, N_i real and
//! M_i synthetic points among its k nearest (itself excluded) in the pooled
//! sample; averages g(eta N_i / (M_i + 1)) with eta = M / N. Auto k = floor(sqrt(M)).
TvEstimate nnre_estimate(const DenseMatrix& real, const DenseMatrix& synth, const KnnConfig& cfg);

//! k-NN distance-ratio estimate: synthetic rows split into an evaluation half
//! and a reference half (M2 rows); M1 = M2 real rows drawn without
//! replacement. Averages g(M2 rho2^p / (M1 rho1^p)) over the evaluation half.
//! Auto k = floor(sqrt(N)) for N evaluation rows.
TvEstimate ee_estimate(const DenseMatrix& real,
                       const DenseMatrix& synth,
                       const KnnConfig& cfg,
                       std::uint64_t seed);

} // namespace tvd
