#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "ulcm/vector.hpp"

namespace ulcm {

/// Restriction h -> f(x + h*d) of an objective to a ray.
///
/// The derivative oracle, when present, returns <g(x + h*d), d> for the
/// subgradient g the objective reports at that point. The optional narrowing
/// hook tells the restriction that only [lo, hi] will be queried from now on;
/// implementations may use it to drop work that cannot matter there.
class RayFunction {
 public:
  using ScalarFn = std::function<double(double)>;
  using NarrowFn = std::function<void(double, double)>;

  explicit RayFunction(ScalarFn value, ScalarFn derivative = {}, NarrowFn narrow = {});

  double value(double h);
  double derivative(double h);
  bool has_derivative() const noexcept { return static_cast<bool>(derivative_); }
  void narrow(double lo, double hi);

  std::size_t value_calls() const noexcept { return value_calls_; }
  std::size_t derivative_calls() const noexcept { return derivative_calls_; }

 private:
  ScalarFn value_;
  ScalarFn derivative_;
  NarrowFn narrow_;
  std::size_t value_calls_ = 0;
  std::size_t derivative_calls_ = 0;
};

/// Hölder-smoothness metadata. Never consumed by a solver.
struct HolderInfo {
  double nu;
  double M;
};

/// Convex objective over R^n. Implementations must be safe for concurrent
/// const use.
class Objective {
 public:
  explicit Objective(std::size_t n);
  virtual ~Objective() = default;

  std::size_t dimension() const noexcept { return n_; }

  virtual double value(const Vector& x) const = 0;
  /// Writes a gradient (a subgradient at kinks) into g, which has size n.
  virtual void gradient(const Vector& x, Vector& g) const = 0;
  Vector gradient(const Vector& x) const;

  /// Default implementation evaluates the full objective at x + h*d.
  virtual RayFunction restrict_to_ray(const Vector& x, const Vector& d) const;

  virtual std::optional<double> optimal_value() const { return std::nullopt; }
  virtual std::optional<Vector> minimizer() const { return std::nullopt; }
  virtual std::optional<HolderInfo> holder() const { return std::nullopt; }

  void require_dimension(const Vector& x) const;

 private:
  std::size_t n_;
};

/// Objective assembled from callables; used by tests and the Python module.
class FunctionObjective final : public Objective {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<void(const Vector&, Vector&)>;

  FunctionObjective(std::size_t n, ValueFn value, GradientFn gradient,
                    std::optional<double> optimal_value = std::nullopt);

  double value(const Vector& x) const override { return value_(x); }
  void gradient(const Vector& x, Vector& g) const override { gradient_(x, g); }
  using Objective::gradient;
  std::optional<double> optimal_value() const override { return optimal_; }

 private:
  ValueFn value_;
  GradientFn gradient_;
  std::optional<double> optimal_;
};

struct FiniteDiffResult {
  bool passed;
  double max_rel_error;
  std::size_t coordinates_checked;
};

/// Central differences with step 1e-6*(1+|x_i|). For n > 50 only 50 evenly
/// spaced coordinates (always including the first and last) are checked.
/// The error of coordinate i is |fd_i - g_i| / max(1, |fd_i|, max_j |g_j|).
FiniteDiffResult finite_diff_check(const Objective& obj, const Vector& x, double tol);

}  // namespace ulcm
