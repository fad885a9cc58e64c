#pragma once

#include "tvd/linalg.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tvd {

inline constexpr std::uint8_t kRealLabel = 1;
inline constexpr std::uint8_t kSynthLabel = 0;

//! n x p samples with optional source labels (real = 1, synthetic = 0).
struct Dataset
{
  DenseMatrix x;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return x.rows(); }
  std::size_t dim() const { return x.cols(); }
  bool labeled() const { return labels.size() == x.rows() && !labels.empty(); }
};

//! Stacks real rows (label 1) followed by synthetic rows (label 0).
Dataset stack_labeled(const DenseMatrix& real, const DenseMatrix& synth);

//! Returns (real rows, synthetic rows) in their original relative order.
std::pair<DenseMatrix, DenseMatrix> split_by_label(const Dataset& data);

DenseMatrix select_rows(const DenseMatrix& m, std::span<const std::size_t> rows);

//! Rows sorted lexicographically; makes order-sensitive estimators invariant
//! to the input row order.
DenseMatrix canonical_order(const DenseMatrix& m);

//! Row-wise concatenation; column counts must agree.
DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);

} // namespace tvd
