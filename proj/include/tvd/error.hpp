#pragma once

#include <stdexcept>
#include <string>

namespace tvd {

enum class ErrorCode
{
  not_symmetric,
  not_positive_definite,
  dimension_mismatch,
  out_of_support,
  both_zero,
  domain_violation,
  non_finite_loss,
  degenerate_labels,
  too_few_samples,
  zero_variance,
  k_too_large,
  covariances_differ,
  tolerance_not_met,
  file_format,
  config
};

const char* to_string(ErrorCode code);

//! Library exception; every failure the library reports carries a code.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace tvd
