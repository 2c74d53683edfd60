#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ulcm/solvers.hpp"

namespace ulcm {

namespace {

constexpr double kMinL = 1e-300;

enum class PrimalStep {
  LineSearch,    // ULCM / delta-ULCM
  FixedStep,     // ULCM with y = x - g/L
  FastGradient,  // UFGM
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Descent-lemma test of the fast gradient method.
bool descent_test(double L, double tau, double fx, double fy, const Vector& g, const Vector& x,
                  const Vector& y, double eps) {
  double inner = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - x[i];
    inner += g[i] * d;
    sq += d * d;
  }
  return fy <= fx + inner + 0.5 * L * sq + 0.5 * tau * eps;
}

SolverReport run_universal(const Objective& obj, const Vector& x0, const SolverOptions& opts,
                           PrimalStep variant) {
  opts.validate();
  obj.require_dimension(x0);
  const std::size_t n = x0.size();
  Stopwatch clock;

  SolverReport report;
  report.L0 = opts.L0;

  UniversalState s;
  s.x = x0;
  s.y = x0;
  s.z = x0;
  s.z0 = x0;
  s.L = opts.L0;

  double fy = obj.value(x0);
  ++report.calls.value;
  if (!std::isfinite(fy)) throw NonFiniteError("solver: f(x0) is not finite");
  report.f0 = fy;

  auto finish = [&](Termination why, std::string message = {}) {
    report.reason = why;
    report.message = std::move(message);
    report.x = s.y;
    report.f = fy;
    report.wall_time_s = clock.seconds();
    return report;
  };

  if (opts.target_value && fy <= *opts.target_value) return finish(Termination::TargetReached);

  Vector x_next(n), y_next(n), z_next(n), g(n), dir(n);
  std::optional<Vector> grad_sum;
  if (opts.check_invariants) grad_sum = Vector(n);
  double warm_step = opts.line_search.initial_length;

  for (std::size_t k = 0; k < opts.max_iterations; ++k) {
    if (opts.time_cap_s && clock.seconds() >= *opts.time_cap_s) return finish(Termination::TimeCap);

    double L_next = std::max(0.5 * s.L, kMinL);
    int doublings = 0;
    StepCoefficients coef{};
    double fx = 0.0, fy_next = 0.0;
    double accepted_step = 0.0;
    while (true) {
      coef = step_coefficients(s.alpha, s.L, L_next);
      kernels::combine(coef.tau, s.z.span(), 1.0 - coef.tau, s.y.span(), x_next.span());
      fx = obj.value(x_next);
      obj.gradient(x_next, g);
      ++report.calls.value;
      ++report.calls.gradient;
      if (!std::isfinite(fx)) throw NonFiniteError("solver: non-finite f(x_{k+1})");

      if (kernels::dot(g.span(), g.span()) == 0.0) {
        // x_{k+1} is optimal; every further step would be a no-op.
        const double A_next = coef.alpha * coef.alpha * L_next;
        report.max_coefficient_residual =
            std::max(report.max_coefficient_residual,
                     std::abs(A_next - coef.alpha - s.A) / (1.0 + s.A));
        s.y = x_next;
        fy = fx;
        s.alpha = coef.alpha;
        s.L = L_next;
        s.A = A_next;
        report.trace.push_back({k + 1, fy, s.L, s.A, s.alpha, doublings,
                                std::numeric_limits<double>::quiet_NaN(), clock.seconds()});
        if (opts.record_iterates) report.iterates.push_back({x_next, s.y, s.z});
        return finish(Termination::ZeroGradient);
      }

      kernels::combine(1.0, s.z.span(), -coef.alpha, g.span(), z_next.span());
      switch (variant) {
        case PrimalStep::LineSearch: {
          for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
          LineSearchConfig cfg = opts.line_search;
          cfg.initial_length = warm_step;
          if (opts.delta > 0.0) cfg.value_tol = std::max(cfg.value_tol, 0.5 * coef.tau * opts.delta);
          RayFunction ray = obj.restrict_to_ray(x_next, dir);
          LineSearchResult ls;
          try {
            ls = minimize_ray(ray, cfg);
          } catch (const UnboundedRayError& e) {
            return finish(Termination::LineSearchFailure, e.what());
          }
          report.calls.ray_value += ls.value_calls;
          report.calls.ray_derivative += ls.derivative_calls;
          accepted_step = ls.step;
          kernels::combine(1.0, x_next.span(), -ls.step, g.span(), y_next.span());
          break;
        }
        case PrimalStep::FixedStep:
          kernels::combine(1.0, x_next.span(), -1.0 / L_next, g.span(), y_next.span());
          break;
        case PrimalStep::FastGradient:
          kernels::combine(coef.tau, z_next.span(), 1.0 - coef.tau, s.y.span(), y_next.span());
          break;
      }
      fy_next = obj.value(y_next);
      ++report.calls.value;

      const bool accepted =
          variant == PrimalStep::FastGradient
              ? descent_test(L_next, coef.tau, fx, fy_next, g, x_next, y_next, opts.eps)
              : ulcm_accept_test(coef.alpha, L_next, coef.tau, fx, fy_next, g, s.z, z_next, opts.eps);
      if (accepted && std::isfinite(fy_next)) break;
      if (doublings == opts.max_doublings) {
        return finish(Termination::LineSearchFailure,
                      "L doubled " + std::to_string(doublings) + " times in iteration " +
                          std::to_string(k + 1));
      }
      L_next *= 2.0;
      ++doublings;
    }

    const double A_next = coef.alpha * coef.alpha * L_next;
    report.max_coefficient_residual =
        std::max(report.max_coefficient_residual, std::abs(A_next - coef.alpha - s.A) / (1.0 + s.A));

    s.dual_constant += coef.alpha * (fx - kernels::dot(g.span(), x_next.span()));
    if (grad_sum) {
      kernels::axpy(coef.alpha, g.span(), grad_sum->span());
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = (s.z0[i] - z_next[i]) - (*grad_sum)[i];
        diff += d * d;
      }
      report.max_dual_sum_residual =
          std::max(report.max_dual_sum_residual, std::sqrt(diff) / (1.0 + norm(*grad_sum)));
    }
    std::swap(s.x, x_next);
    std::swap(s.y, y_next);
    std::swap(s.z, z_next);
    s.alpha = coef.alpha;
    s.tau = coef.tau;
    s.L = L_next;
    s.A = A_next;
    s.k = k + 1;
    fy = fy_next;
    if (variant == PrimalStep::LineSearch) warm_step = std::max(accepted_step, 1e-16);

    const double fhat =
        opts.theta ? dual_bound(s, *opts.theta) : std::numeric_limits<double>::quiet_NaN();
    report.trace.push_back({s.k, fy, s.L, s.A, s.alpha, doublings, fhat, clock.seconds()});
    if (opts.record_iterates) report.iterates.push_back({s.x, s.y, s.z});

    if (opts.target_value && fy <= *opts.target_value) return finish(Termination::TargetReached);
    if (opts.theta && fy - fhat <= opts.eps) return finish(Termination::DualGapReached);
  }
  return finish(Termination::MaxIterations);
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::TargetReached: return "target-value";
    case Termination::DualGapReached: return "dual-gap";
    case Termination::ZeroGradient: return "zero-gradient";
    case Termination::MaxIterations: return "max-iterations";
    case Termination::TimeCap: return "time-cap";
    case Termination::LineSearchFailure: return "line-search-failure";
  }
  return "unknown";
}

Termination termination_from_string(std::string_view s) {
  for (Termination t : {Termination::TargetReached, Termination::DualGapReached, Termination::ZeroGradient,
                        Termination::MaxIterations, Termination::TimeCap, Termination::LineSearchFailure}) {
    if (to_string(t) == s) return t;
  }
  throw std::invalid_argument("unknown termination reason: " + std::string(s));
}

void SolverOptions::validate() const {
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw std::invalid_argument("SolverOptions: L0 must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("SolverOptions: eps must be positive");
  if (!(delta >= 0.0)) throw std::invalid_argument("SolverOptions: delta must be non-negative");
  if (theta && !(*theta > 0.0)) throw std::invalid_argument("SolverOptions: theta must be positive");
  if (max_iterations < 1 || max_doublings < 1)
    throw std::invalid_argument("SolverOptions: caps must be >= 1");
  if (time_cap_s && !(*time_cap_s > 0.0))
    throw std::invalid_argument("SolverOptions: time cap must be positive");
  line_search.validate();
}

SolverReport ulcm_solve(const Objective& obj, const Vector& x0, const SolverOptions& opts) {
  return run_universal(obj, x0, opts, PrimalStep::LineSearch);
}

SolverReport ulcm_fixed_step(const Objective& obj, const Vector& x0, const SolverOptions& opts) {
  return run_universal(obj, x0, opts, PrimalStep::FixedStep);
}

SolverReport ufgm_solve(const Objective& obj, const Vector& x0, const SolverOptions& opts) {
  return run_universal(obj, x0, opts, PrimalStep::FastGradient);
}

}  // namespace ulcm
