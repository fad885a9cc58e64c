#pragma once

#include "tvd/linalg.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tvd {

struct Neighbor
{
  double dist_sq;
  std::size_t index;

  friend bool operator<(const Neighbor& a, const Neighbor& b)
  {
    return a.dist_sq < b.dist_sq || (a.dist_sq == b.dist_sq && a.index < b.index);
  }
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

inline constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

//! Exact k nearest rows of `points` to `query` under Euclidean distance,
//! sorted by (distance, row index). Row `exclude` is skipped.
std::vector<Neighbor> knn_query(const DenseMatrix& points,
                                std::span<const double> query,
                                std::size_t k,
                                std::size_t exclude = kNoExclusion);

double squared_distance(std::span<const double> a, std::span<const double> b);

} // namespace tvd
