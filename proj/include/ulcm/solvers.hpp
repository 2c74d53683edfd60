#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ulcm/linesearch.hpp"
#include "ulcm/objective.hpp"

namespace ulcm {

enum class Termination {
  TargetReached,
  DualGapReached,
  ZeroGradient,
  MaxIterations,
  TimeCap,
  LineSearchFailure,
};

std::string_view to_string(Termination t);
Termination termination_from_string(std::string_view s);

struct SolverOptions {
  /// Initial "inexact" Lipschitz estimate.
  double L0 = 1.0;
  double eps = 1e-4;
  /// Line-search slack; 0 requests the tightest configured search.
  double delta = 0.0;
  /// Upper bound on 0.5*||x0 - x*||^2. Enables the dual bound and gap stop.
  std::optional<double> theta;
  /// Stop as soon as f(y_k) <= target.
  std::optional<double> target_value;
  std::size_t max_iterations = 1'000'000;
  std::optional<double> time_cap_s;
  /// Cap on L doublings within one iteration.
  int max_doublings = 60;
  LineSearchConfig line_search{};
  /// Keep (x_k, y_k, z_k) for every iteration. Memory O(n * iterations).
  bool record_iterates = false;
  /// Maintain sum alpha_i grad f(x_i) explicitly and compare with z0 - z_k.
  bool check_invariants = false;

  void validate() const;
};

struct IterationRecord {
  std::size_t k;
  double f;
  double L;
  double A;
  double alpha;
  int doublings;
  /// Dual bound when theta is set, NaN otherwise.
  double dual_bound;
  double elapsed_s;
};

struct IterateSnapshot {
  Vector x, y, z;
};

struct OracleCounts {
  std::size_t value = 0;
  std::size_t gradient = 0;
  std::size_t ray_value = 0;
  std::size_t ray_derivative = 0;
};

struct SolverReport {
  Termination reason = Termination::MaxIterations;
  std::string message;
  Vector x;
  double f = 0.0;
  double f0 = 0.0;
  double L0 = 0.0;
  std::vector<IterationRecord> trace;
  std::vector<IterateSnapshot> iterates;
  double wall_time_s = 0.0;
  OracleCounts calls;
  /// max_k |a_{k+1}^2 L_{k+1} - a_{k+1} - a_k^2 L_k| / (1 + a_k^2 L_k)
  double max_coefficient_residual = 0.0;
  /// max_k ||(z0 - z_k) - sum alpha_i g_i|| / (1 + ||sum||), with check_invariants.
  double max_dual_sum_residual = 0.0;

  std::size_t iterations() const noexcept { return trace.size(); }
};

/// State of the universal methods after k iterations.
struct UniversalState {
  std::size_t k = 0;
  Vector x, y, z, z0;
  double alpha = 0.0;
  double A = 0.0;
  double L = 1.0;
  double tau = 1.0;
  /// c_k = sum_i alpha_i (f(x_i) - <g_i, x_i>); sum_i alpha_i g_i = z0 - z_k.
  double dual_constant = 0.0;
};

/// Inexact Lipschitz constant for Hölder-continuous gradients:
/// [((1-nu)/(1+nu)) * M/delta]^((1-nu)/(1+nu)) * M, exactly M at nu = 1.
double inexact_lipschitz(double delta, double nu, double M_nu);

struct StepCoefficients {
  double alpha;
  double tau;
};

/// alpha' = 1/(2L') + sqrt(1/(4L'^2) + alpha^2 L / L'), tau = 1/(alpha' L').
StepCoefficients step_coefficients(double alpha_k, double L_k, double L_next);

/// Acceptance inequality of the coupling step:
/// <alpha g, z_k - z_{k+1}> - 0.5||z_k - z_{k+1}||^2
///     <= alpha^2 L (f(x_{k+1}) - f(y_{k+1}) + tau eps / 2)
bool ulcm_accept_test(double alpha_next, double L_next, double tau, double f_x_next, double f_y_next,
                      const Vector& grad_x_next, const Vector& z_k, const Vector& z_next, double eps);

/// Minimum of the averaged linear model over the ball 0.5||u - z0||^2 <= theta.
double dual_bound(const UniversalState& state, double theta);

/// Linear coupling with exact steepest-descent primal steps. With
/// opts.delta > 0 each line search may stop once its certified value error is
/// below tau_k * delta / 2.
SolverReport ulcm_solve(const Objective& obj, const Vector& x0, const SolverOptions& opts);

/// ulcm_solve with the line search replaced by y = x - g / L.
SolverReport ulcm_fixed_step(const Objective& obj, const Vector& x0, const SolverOptions& opts);

/// Universal fast gradient method, Euclidean prox.
SolverReport ufgm_solve(const Objective& obj, const Vector& x0, const SolverOptions& opts);

/// Nesterov's conjugate-gradient-type method: a two-sided search along
/// y_{k-2} - x_k followed by a steepest-descent step. No restarts.
SolverReport ncg_solve(const Objective& obj, const Vector& x0, const SolverOptions& opts);

}  // namespace ulcm
