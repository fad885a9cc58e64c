#pragma once

#include "tvd/distributions.hpp"
#include "tvd/estimate.hpp"

#include <cstdint>

namespace tvd {

//! Standard normal CDF through erf.
double normal_cdf(double x);

//! Monte Carlo TV from the true densities; "se" holds the standard error.
TvEstimate mc_true_tv(const MixturePair& m, std::size_t n_mc, std::uint64_t seed);

//! 1/2 * integral |P - Q| for one-dimensional P and Q by adaptive Simpson
//! quadrature. The range covers +/-12 sd around location families, (0, cap]
//! for positive families and (0, 1) for beta; pieces touching 0 or 1 are
//! integrated in log / logit coordinates. Throws ToleranceNotMet when the
//! error estimate stays above tol.
double quadrature_tv_1d(const Distribution& p, const Distribution& q, double tol = 1e-8);

//! 2 Phi(Delta / 2) - 1 with Delta the Mahalanobis distance between the means.
//! Throws CovariancesDiffer unless the covariances agree within 1e-12.
double closed_form_tv_equal_cov(const GaussianParams& g1, const GaussianParams& g2);

} // namespace tvd
