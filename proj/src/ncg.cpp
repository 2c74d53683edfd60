#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ulcm/solvers.hpp"

namespace ulcm {

SolverReport ncg_solve(const Objective& obj, const Vector& x0, const SolverOptions& opts) {
  opts.validate();
  obj.require_dimension(x0);
  const std::size_t n = x0.size();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  SolverReport report;
  report.L0 = 0.0;  // no Lipschitz estimate
  Vector x = x0;
  double fx = obj.value(x);
  ++report.calls.value;
  if (!std::isfinite(fx)) throw NonFiniteError("ncg: f(x0) is not finite");
  report.f0 = fx;

  auto finish = [&](Termination why, std::string message = {}) {
    report.reason = why;
    report.message = std::move(message);
    report.x = x;
    report.f = fx;
    report.wall_time_s = elapsed();
    return report;
  };
  if (opts.target_value && fx <= *opts.target_value) return finish(Termination::TargetReached);

  // y_{k-2} and y_{k-1}; both start at x0.
  Vector y_back2 = x0, y_back1 = x0;
  Vector y(n), g(n), dir(n);
  double warm_alpha = opts.line_search.initial_length;
  double warm_beta = opts.line_search.initial_length;

  for (std::size_t k = 0; k < opts.max_iterations; ++k) {
    if (opts.time_cap_s && elapsed() >= *opts.time_cap_s) return finish(Termination::TimeCap);
    try {
      double dir_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dir[i] = y_back2[i] - x[i];
        dir_sq += dir[i] * dir[i];
      }
      double alpha = 0.0;
      if (dir_sq > 0.0) {
        LineSearchConfig cfg = opts.line_search;
        cfg.two_sided = true;
        cfg.initial_length = warm_alpha;
        RayFunction ray = obj.restrict_to_ray(x, dir);
        const LineSearchResult ls = minimize_ray(ray, cfg);
        report.calls.ray_value += ls.value_calls;
        report.calls.ray_derivative += ls.derivative_calls;
        alpha = ls.step;
        if (alpha != 0.0) warm_alpha = std::max(std::abs(alpha), 1e-16);
      }
      kernels::combine(1.0, x.span(), alpha, dir.span(), y.span());

      obj.gradient(y, g);
      ++report.calls.gradient;
      if (kernels::dot(g.span(), g.span()) == 0.0) {
        x = y;
        fx = obj.value(x);
        ++report.calls.value;
        report.trace.push_back({k + 1, fx, 0.0, 0.0, alpha, 0, kNaN, elapsed()});
        return finish(Termination::ZeroGradient);
      }
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      LineSearchConfig cfg = opts.line_search;
      cfg.two_sided = false;
      cfg.initial_length = warm_beta;
      RayFunction ray = obj.restrict_to_ray(y, dir);
      const LineSearchResult ls = minimize_ray(ray, cfg);
      report.calls.ray_value += ls.value_calls;
      report.calls.ray_derivative += ls.derivative_calls;
      if (ls.step > 0.0) warm_beta = std::max(ls.step, 1e-16);

      std::swap(y_back2, y_back1);
      y_back1 = y;
      kernels::combine(1.0, y.span(), -ls.step, g.span(), x.span());
      fx = obj.value(x);
      ++report.calls.value;
      report.trace.push_back({k + 1, fx, 0.0, 0.0, alpha, 0, kNaN, elapsed()});
      if (opts.record_iterates) report.iterates.push_back({x, y, y_back2});
    } catch (const UnboundedRayError& e) {
      return finish(Termination::LineSearchFailure, e.what());
    }
    if (opts.target_value && fx <= *opts.target_value) return finish(Termination::TargetReached);
  }
  return finish(Termination::MaxIterations);
}

}  // namespace ulcm
