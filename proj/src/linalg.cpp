#include "tvd/linalg.hpp"

#include "tvd/error.hpp"

#include <cmath>
#include <sstream>

namespace tvd {

const char* to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::not_positive_definite: return "NotPositiveDefinite";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::out_of_support: return "OutOfSupport";
    case ErrorCode::both_zero: return "BothZero";
    case ErrorCode::domain_violation: return "DomainViolation";
    case ErrorCode::non_finite_loss: return "NonFiniteLoss";
    case ErrorCode::degenerate_labels: return "DegenerateLabels";
    case ErrorCode::too_few_samples: return "TooFewSamples";
    case ErrorCode::zero_variance: return "ZeroVariance";
    case ErrorCode::k_too_large: return "KTooLarge";
    case ErrorCode::covariances_differ: return "CovariancesDiffer";
    case ErrorCode::tolerance_not_met: return "ToleranceNotMet";
    case ErrorCode::file_format: return "FileFormat";
    case ErrorCode::config: return "ConfigError";
  }
  return "Unknown";
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
  : rows_(rows), cols_(cols), data_(rows * cols, fill)
{}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
  : rows_(rows), cols_(cols), data_(std::move(data))
{
  if (data_.size() != rows_ * cols_)
    throw Error(ErrorCode::dimension_mismatch, "data length does not equal rows * cols");
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag)
{
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i)
    m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
  if (rows.empty())
    return {};
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw Error(ErrorCode::dimension_mismatch, "ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

DenseMatrix DenseMatrix::transpose() const
{
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

bool DenseMatrix::all_finite() const
{
  for (double v : data_)
    if (!std::isfinite(v))
      return false;
  return true;
}

double DenseMatrix::frobenius_norm() const
{
  double s = 0.0;
  for (double v : data_)
    s += v * v;
  return std::sqrt(s);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
{
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::dimension_mismatch, "matrix product");
  DenseMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace {

DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, double sign)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "elementwise operation");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i)
    c.data()[i] += sign * b.data()[i];
  return c;
}

} // namespace

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) { return elementwise(a, b, 1.0); }
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return elementwise(a, b, -1.0); }

CholeskyFactor cholesky(const DenseMatrix& a)
{
  const std::size_t n = a.rows();
  if (a.cols() != n)
    throw Error(ErrorCode::dimension_mismatch, "cholesky needs a square matrix");
  if (!a.all_finite())
    throw Error(ErrorCode::not_positive_definite, "non-finite entry");

  DenseMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance) {
        std::ostringstream msg;
        msg << "entries (" << i << "," << j << ") differ by " << std::abs(a(i, j) - a(j, i));
        throw Error(ErrorCode::not_symmetric, msg.str());
      }
      s(i, j) = 0.5 * (a(i, j) + a(j, i));
    }

  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = s(j, j);
    for (std::size_t k = 0; k < j; ++k)
      pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) {
      std::ostringstream msg;
      msg << "pivot " << j << " is " << pivot;
      throw Error(ErrorCode::not_positive_definite, msg.str());
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k)
        v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return CholeskyFactor(std::move(l));
}

void CholeskyFactor::forward_solve(std::span<double> b) const
{
  const std::size_t n = dim();
  if (b.size() != n)
    throw Error(ErrorCode::dimension_mismatch, "forward solve");
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    const auto li = lower_.row(i);
    for (std::size_t k = 0; k < i; ++k)
      v -= li[k] * b[k];
    b[i] = v / li[i];
  }
}

void CholeskyFactor::multiply_lower(std::span<const double> z, std::span<double> out) const
{
  const std::size_t n = dim();
  if (z.size() != n || out.size() != n)
    throw Error(ErrorCode::dimension_mismatch, "lower multiply");
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = lower_.row(i);
    double v = 0.0;
    for (std::size_t k = 0; k <= i; ++k)
      v += li[k] * z[k];
    out[i] = v;
  }
}

double log_det(const CholeskyFactor& f)
{
  double s = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i)
    s += std::log(f.lower()(i, i));
  return 2.0 * s;
}

double mahalanobis_sq(std::span<const double> x,
                      std::span<const double> mu,
                      const CholeskyFactor& f)
{
  const std::size_t n = f.dim();
  if (x.size() != n || mu.size() != n)
    throw Error(ErrorCode::dimension_mismatch, "mahalanobis_sq");
  // p <= kMaxDim keeps this on the stack.
  double buf[kMaxDim];
  std::vector<double> heap;
  double* v = buf;
  if (n > kMaxDim) {
    heap.resize(n);
    v = heap.data();
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = x[i] - mu[i];
  f.forward_solve({v, n});
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += v[i] * v[i];
  return s;
}

std::vector<double> cholesky_solve(const CholeskyFactor& f, std::span<const double> b)
{
  const std::size_t n = f.dim();
  if (b.size() != n)
    throw Error(ErrorCode::dimension_mismatch, "cholesky_solve");
  std::vector<double> y(b.begin(), b.end());
  f.forward_solve(y);
  const DenseMatrix& l = f.lower();
  for (std::size_t ii = n; ii-- > 0;) {
    double v = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k)
      v -= l(k, ii) * y[k];
    y[ii] = v / l(ii, ii);
  }
  return y;
}

} // namespace tvd
