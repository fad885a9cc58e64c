#pragma once

#include "tvd/rng.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace tvd {

struct McResult
{
  double mean = 0.0;
  //! sd of the per-draw terms / sqrt(n)
  double se = 0.0;
};

//! Monte Carlo TV through the mixture identity
//!   TV = E_{x ~ (P+Q)/2} |Q(x) - P(x)| / (P(x) + Q(x)),
//! with each term evaluated as |tanh((log P - log Q) / 2)|.
//!
//! log_p / log_q: double(std::span<const double>)
//! sample_p / sample_q: void(Rng&, std::span<double>)
template <class LogP, class LogQ, class SampleP, class SampleQ>
McResult mc_ratio_tv(std::size_t dim,
                     LogP&& log_p,
                     LogQ&& log_q,
                     SampleP&& sample_p,
                     SampleQ&& sample_q,
                     std::size_t n_mc,
                     Rng& rng)
{
  McResult res;
  if (n_mc == 0)
    return res;
  std::vector<double> x(dim);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < n_mc; ++i) {
    if (rng.uniform() < 0.5)
      sample_p(rng, std::span<double>(x));
    else
      sample_q(rng, std::span<double>(x));
    const double lp = log_p(std::span<const double>(x));
    const double lq = log_q(std::span<const double>(x));
    double term;
    if (std::isinf(lp) || std::isinf(lq))
      term = (lp == lq) ? 0.0 : 1.0;
    else
      term = std::abs(std::tanh(0.5 * (lp - lq)));
    sum += term;
    sum_sq += term * term;
  }
  const double n = static_cast<double>(n_mc);
  res.mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)) : 0.0;
  res.se = std::sqrt(var / n);
  return res;
}

} // namespace tvd
