#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>

namespace tvd {

//! Result of any TV estimator or oracle.
struct TvEstimate
{
  std::string method;
  double tv = 0.0;
  //! Held-out risk for classifier-based methods, NaN otherwise.
  double risk = std::numeric_limits<double>::quiet_NaN();
  std::size_t n_eval = 0;
  //! Auxiliary numbers: raw (unclamped) value, standard error "se", tuning
  //! parameters, optimizer state.
  std::map<std::string, double> diagnostics;

  double diag(const std::string& key, double fallback = std::numeric_limits<double>::quiet_NaN()) const
  {
    auto it = diagnostics.find(key);
    return it == diagnostics.end() ? fallback : it->second;
  }
};

inline double clamp_unit(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

} // namespace tvd
