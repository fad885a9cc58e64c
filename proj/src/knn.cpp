#include "tvd/knn.hpp"

#include "tvd/error.hpp"

#include <algorithm>

namespace tvd {

double squared_distance(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

std::vector<Neighbor> knn_query(const DenseMatrix& points,
                                std::span<const double> query,
                                std::size_t k,
                                std::size_t exclude)
{
  if (query.size() != points.cols())
    throw Error(ErrorCode::dimension_mismatch, "query dimension");
  const std::size_t available = points.rows() - (exclude < points.rows() ? 1 : 0);
  if (k == 0 || k > available)
    throw Error(ErrorCode::k_too_large, "k must be in [1, " + std::to_string(available) + "]");

  // Max-heap on (distance, index) holding the best k seen so far.
  std::vector<Neighbor> heap;
  heap.reserve(k + 1);
  const std::size_t p = points.cols();
  const double* base = points.data().data();
  for (std::size_t i = 0; i < points.rows(); ++i) {
    if (i == exclude)
      continue;
    const double* row = base + i * p;
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = row[j] - query[j];
      s += d * d;
    }
    const Neighbor cand{s, i};
    if (heap.size() < k) {
      heap.push_back(cand);
      std::push_heap(heap.begin(), heap.end());
    } else if (cand < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = cand;
      std::push_heap(heap.begin(), heap.end());
    }
  }
  std::sort_heap(heap.begin(), heap.end());
  return heap;
}

} // namespace tvd
