#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ulcm/objective.hpp"

namespace ulcm {

/// f(x) = sum_i i * x_i^2 (1-based weights). L-smooth with L = 2n, f* = 0 at 0.
class QuadraticProblem final : public Objective {
 public:
  explicit QuadraticProblem(std::size_t n);

  double value(const Vector& x) const override;
  void gradient(const Vector& x, Vector& g) const override;
  using Objective::gradient;
  /// O(n) setup, O(1) per evaluation.
  RayFunction restrict_to_ray(const Vector& x, const Vector& d) const override;

  std::optional<double> optimal_value() const override { return 0.0; }
  std::optional<Vector> minimizer() const override { return Vector(dimension()); }
  std::optional<HolderInfo> holder() const override {
    return HolderInfo{1.0, 2.0 * static_cast<double>(dimension())};
  }
};

double quad_eval(std::size_t n, const Vector& x);
Vector quad_grad(std::size_t n, const Vector& x);

/// f(x) = max_i x_i + (mu/2)||x||^2, f* = -1/(2 mu n) at x* = -1/(mu n) * e.
/// The subgradient picks the lowest index attaining the max.
class MaxQuadProblem final : public Objective {
 public:
  MaxQuadProblem(std::size_t n, double mu = 0.1);

  double mu() const noexcept { return mu_; }

  double value(const Vector& x) const override;
  void gradient(const Vector& x, Vector& g) const override;
  using Objective::gradient;
  /// O(n) setup. Evaluation scans the candidate lines x_i + h*d_i that can
  /// still attain the max on the current bracket; narrowing prunes them.
  RayFunction restrict_to_ray(const Vector& x, const Vector& d) const override;

  std::optional<double> optimal_value() const override;
  std::optional<Vector> minimizer() const override;

 private:
  double mu_;
};

double maxquad_eval(std::size_t n, double mu, const Vector& x);
Vector maxquad_subgrad(std::size_t n, double mu, const Vector& x);

/// f(x) = phi(A x) + psi(x) with A dense n x n row-major and psi separable.
/// Ray restrictions cache v0 = A x and v1 = A d, so each 1-D evaluation is O(n).
class CompositeObjective final : public Objective {
 public:
  struct Part {
    std::function<double(std::span<const double>)> value;
    /// Writes a (sub)gradient into the output span.
    std::function<void(std::span<const double>, std::span<double>)> gradient;
  };

  CompositeObjective(std::size_t n, std::vector<double> matrix, Part phi, Part psi,
                     std::optional<double> optimal_value = std::nullopt,
                     std::optional<Vector> minimizer = std::nullopt);

  double value(const Vector& x) const override;
  void gradient(const Vector& x, Vector& g) const override;
  using Objective::gradient;
  RayFunction restrict_to_ray(const Vector& x, const Vector& d) const override;
  /// Full-cost evaluation of f(x + h*d), bypassing the cache.
  double direct_ray_value(const Vector& x, const Vector& d, double h) const;

  std::optional<double> optimal_value() const override { return optimal_; }
  std::optional<Vector> minimizer() const override { return minimizer_; }

  std::size_t matvec_count() const noexcept { return matvecs_.load(); }
  const std::vector<double>& matrix() const noexcept { return a_; }

 private:
  void multiply(std::span<const double> x, std::span<double> out) const;
  void multiply_transposed(std::span<const double> y, std::span<double> out) const;

  std::vector<double> a_;
  Part phi_;
  Part psi_;
  std::optional<double> optimal_;
  std::optional<Vector> minimizer_;
  mutable std::atomic<std::size_t> matvecs_{0};
};

namespace parts {
/// phi(v) = 0.5 * ||v - b||^2
CompositeObjective::Part half_squared_distance(std::vector<double> b);
/// psi(x) = lambda * ||x||_1, subgradient 0 at x_i = 0. lambda = 0 gives psi = 0.
CompositeObjective::Part l1(double lambda);
}  // namespace parts

/// Well-conditioned random instance: A = I + 0.25 G / sqrt(n) with G standard
/// normal, b = A xbar, phi = 0.5||. - b||^2, psi = lambda ||.||_1. With
/// lambda = 0 the optimum f* = 0 is attained at xbar.
std::unique_ptr<CompositeObjective> make_random_composite(std::size_t n, std::uint64_t seed,
                                                          double lambda = 0.0);

}  // namespace ulcm
