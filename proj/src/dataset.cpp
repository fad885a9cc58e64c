#include "tvd/dataset.hpp"

#include "tvd/error.hpp"

#include <algorithm>
#include <numeric>

namespace tvd {

Dataset stack_labeled(const DenseMatrix& real, const DenseMatrix& synth)
{
  Dataset out;
  out.x = vstack(real, synth);
  out.labels.assign(real.rows(), kRealLabel);
  out.labels.insert(out.labels.end(), synth.rows(), kSynthLabel);
  return out;
}

std::pair<DenseMatrix, DenseMatrix> split_by_label(const Dataset& data)
{
  if (data.labels.size() != data.size())
    throw Error(ErrorCode::dimension_mismatch, "dataset is not labeled");
  std::vector<std::size_t> real, synth;
  for (std::size_t i = 0; i < data.size(); ++i)
    (data.labels[i] == kRealLabel ? real : synth).push_back(i);
  return {select_rows(data.x, real), select_rows(data.x, synth)};
}

DenseMatrix select_rows(const DenseMatrix& m, std::span<const std::size_t> rows)
{
  DenseMatrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = m.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

DenseMatrix canonical_order(const DenseMatrix& m)
{
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = m.row(a);
    const auto rb = m.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  return select_rows(m, idx);
}

DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b)
{
  if (a.rows() == 0)
    return b;
  if (b.rows() == 0)
    return a;
  if (a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "vstack column counts differ");
  std::vector<double> data = a.data();
  data.insert(data.end(), b.data().begin(), b.data().end());
  return DenseMatrix(a.rows() + b.rows(), a.cols(), std::move(data));
}

} // namespace tvd
