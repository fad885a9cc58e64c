#include "tvd/optimize.hpp"

#include <cmath>
#include <deque>

namespace tvd {

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

struct Pair
{
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

} // namespace

LbfgsResult minimize_lbfgs(const ObjectiveFn& fn, std::vector<double> x0, const LbfgsOptions& opt)
{
  const std::size_t n = x0.size();
  LbfgsResult res;
  res.x = std::move(x0);
  std::vector<double> g(n), g_new(n), x_new(n), dir(n), alpha(opt.memory);
  double f = fn(res.x, g);
  if (opt.record_trace)
    res.trace.push_back(f);

  std::deque<Pair> hist;
  for (;;) {
    const double gnorm = std::sqrt(dot(g, g));
    res.grad_norm = gnorm;
    if (gnorm <= opt.grad_tol) {
      res.converged = true;
      break;
    }
    if (res.iterations >= opt.max_iters)
      break;

    // Two-loop recursion.
    for (std::size_t i = 0; i < n; ++i)
      dir[i] = -g[i];
    for (std::size_t k = hist.size(); k-- > 0;) {
      alpha[k] = hist[k].rho * dot(hist[k].s, dir);
      for (std::size_t i = 0; i < n; ++i)
        dir[i] -= alpha[k] * hist[k].y[i];
    }
    if (!hist.empty()) {
      const Pair& last = hist.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (auto& v : dir)
        v *= gamma;
    }
    for (std::size_t k = 0; k < hist.size(); ++k) {
      const double b = hist[k].rho * dot(hist[k].y, dir);
      for (std::size_t i = 0; i < n; ++i)
        dir[i] += hist[k].s[i] * (alpha[k] - b);
    }

    double gd = dot(g, dir);
    if (!(gd < 0.0)) {
      hist.clear();
      for (std::size_t i = 0; i < n; ++i)
        dir[i] = -g[i];
      gd = -gnorm * gnorm;
    }

    double step = hist.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    double f_new = f;
    bool accepted = false;
    for (std::size_t bt = 0; bt <= opt.max_backtracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i)
        x_new[i] = res.x[i] + step * dir[i];
      f_new = fn(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + opt.armijo_c1 * step * gd) {
        accepted = true;
        break;
      }
      step *= opt.backtrack;
    }
    if (!accepted)
      break;

    Pair pr;
    pr.s.resize(n);
    pr.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pr.s[i] = x_new[i] - res.x[i];
      pr.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pr.s, pr.y);
    // Curvature condition; skipped pairs keep the inverse-Hessian estimate
    // positive definite on this non-convex objective.
    if (sy > 1e-12 * std::sqrt(dot(pr.s, pr.s) * dot(pr.y, pr.y))) {
      pr.rho = 1.0 / sy;
      hist.push_back(std::move(pr));
      if (hist.size() > opt.memory)
        hist.pop_front();
    }
    res.x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    ++res.iterations;
    if (opt.record_trace)
      res.trace.push_back(f);
  }
  res.f = f;
  return res;
}

} // namespace tvd
