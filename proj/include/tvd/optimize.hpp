#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tvd {

struct LbfgsOptions
{
  std::size_t memory = 10;
  std::size_t max_iters = 1000;
  double grad_tol = 1e-7;
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  std::size_t max_backtracks = 60;
  bool record_trace = false;
};

struct LbfgsResult
{
  std::vector<double> x;
  double f = 0.0;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  //! Objective after every accepted step, starting with f(x0).
  std::vector<double> trace;
};

//! Fills grad and returns f(x).
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;

//! Limited-memory BFGS with a backtracking Armijo line search. Stops when
//! ||grad||_2 <= grad_tol, after max_iters, or when no step satisfies the
//! sufficient-decrease condition.
LbfgsResult minimize_lbfgs(const ObjectiveFn& fn, std::vector<double> x0, const LbfgsOptions& opt);

} // namespace tvd
