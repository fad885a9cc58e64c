#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tvd {

//! Largest dimension accepted by the Gaussian machinery.
inline constexpr std::size_t kMaxDim = 64;

//! Row-major dense matrix of doubles.
class DenseMatrix
{
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const
  {
    return {data_.data() + i * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  DenseMatrix transpose() const;
  bool all_finite() const;
  double frobenius_norm() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

//! Lower-triangular L with L * L^T = A and a strictly positive diagonal.
class CholeskyFactor
{
public:
  const DenseMatrix& lower() const { return lower_; }
  std::size_t dim() const { return lower_.rows(); }

  //! Solves L y = b in place.
  void forward_solve(std::span<double> b) const;
  //! out = L z
  void multiply_lower(std::span<const double> z, std::span<double> out) const;

private:
  friend CholeskyFactor cholesky(const DenseMatrix& a);
  explicit CholeskyFactor(DenseMatrix lower) : lower_(std::move(lower)) {}

  DenseMatrix lower_;
};

inline constexpr double kSymmetryTolerance = 1e-9;

//! Factorizes a symmetric positive-definite matrix. The input is symmetrized
//! as (A + A^T)/2 after the symmetry check. No pivoting.
CholeskyFactor cholesky(const DenseMatrix& a);

double log_det(const CholeskyFactor& f);

//! (x - mu)^T A^{-1} (x - mu) for the factored A.
double mahalanobis_sq(std::span<const double> x,
                      std::span<const double> mu,
                      const CholeskyFactor& f);

//! Solves A x = b through the factor.
std::vector<double> cholesky_solve(const CholeskyFactor& f, std::span<const double> b);

} // namespace tvd
