#pragma once

#include "tvd/distributions.hpp"
#include "tvd/linalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace tvd {

//! Feature transform psi(x) spanning the linear hypothesis class
//! h(x) = beta^T psi(x). Column 0 is always the constant 1.
//!
//! gaussian_quadratic(p): (1, x_1..x_p, x_i x_j for i <= j in lexicographic
//! order), d = (p + 2)(p + 1) / 2.
//! table(a, b): one-dimensional maps for pairs of exponential-family members,
//! e.g. exponential/gamma -> (1, x, log x).
class FeatureMapSpec
{
public:
  enum class Term
  {
    one,
    x,
    x_sq,
    log_x,
    log_one_minus_x
  };

  static FeatureMapSpec gaussian_quadratic(std::size_t p);
  static FeatureMapSpec table(Family a, Family b);
  //! "gq:p=5", "t1:exp-gamma"
  static FeatureMapSpec parse(const std::string& tag);
  //! Natural map for a pair: quadratic for Gaussian pairs of any dimension,
  //! otherwise the univariate table entry.
  static FeatureMapSpec for_pair(const MixturePair& m);

  std::string tag() const;
  std::size_t input_dim() const { return input_dim_; }
  std::size_t out_dim() const;
  bool is_quadratic() const { return quadratic_; }
  const std::vector<Term>& terms() const { return terms_; }

  //! Throws DomainViolation for log terms outside their domain.
  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

  friend bool operator==(const FeatureMapSpec&, const FeatureMapSpec&) = default;

private:
  bool quadratic_ = true;
  std::size_t input_dim_ = 0;
  Family first_ = Family::gaussian;
  Family second_ = Family::gaussian;
  std::vector<Term> terms_;
};

//! Affine column scaling used during optimization; intercept column untouched.
struct Standardization
{
  std::vector<double> mean;
  std::vector<double> scale;

  //! Maps coefficients of standardized columns back to raw columns.
  std::vector<double> to_raw(std::span<const double> beta_std) const;
};

//! Row i = apply(spec, data row i). DomainViolation reports the row index.
DenseMatrix apply_dataset(const FeatureMapSpec& spec, const DenseMatrix& data);

//! Standardizes non-intercept columns in place to mean 0, sd 1 (population
//! sd). Constant columns are left as they are.
Standardization standardize_columns(DenseMatrix& features);

} // namespace tvd
