#include "ulcm/objective.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace ulcm {

RayFunction::RayFunction(ScalarFn value, ScalarFn derivative, NarrowFn narrow)
    : value_(std::move(value)), derivative_(std::move(derivative)), narrow_(std::move(narrow)) {
  if (!value_) throw std::invalid_argument("RayFunction: value oracle required");
}

double RayFunction::value(double h) {
  ++value_calls_;
  return value_(h);
}

double RayFunction::derivative(double h) {
  if (!derivative_) throw std::logic_error("RayFunction: no derivative oracle");
  ++derivative_calls_;
  return derivative_(h);
}

void RayFunction::narrow(double lo, double hi) {
  if (narrow_) narrow_(lo, hi);
}

Objective::Objective(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Objective: dimension must be >= 1");
}

Vector Objective::gradient(const Vector& x) const {
  Vector g(n_);
  gradient(x, g);
  return g;
}

void Objective::require_dimension(const Vector& x) const {
  if (x.size() != n_) throw DimensionError(n_, x.size());
}

RayFunction Objective::restrict_to_ray(const Vector& x, const Vector& d) const {
  require_dimension(x);
  require_dimension(d);
  struct Scratch {
    Vector x, d, point, grad;
  };
  auto s = std::make_shared<Scratch>(Scratch{x, d, Vector(x.size()), Vector(x.size())});
  auto move_to = [s](double h) {
    kernels::combine(1.0, s->x.span(), h, s->d.span(), s->point.span());
  };
  return RayFunction(
      [this, s, move_to](double h) {
        move_to(h);
        return value(s->point);
      },
      [this, s, move_to](double h) {
        move_to(h);
        gradient(s->point, s->grad);
        return kernels::dot(s->grad.span(), s->d.span());
      });
}

FunctionObjective::FunctionObjective(std::size_t n, ValueFn value, GradientFn gradient,
                                     std::optional<double> optimal_value)
    : Objective(n), value_(std::move(value)), gradient_(std::move(gradient)),
      optimal_(optimal_value) {
  if (!value_ || !gradient_) throw std::invalid_argument("FunctionObjective: null oracle");
}

FiniteDiffResult finite_diff_check(const Objective& obj, const Vector& x, double tol) {
  obj.require_dimension(x);
  const std::size_t n = x.size();
  const Vector g = obj.gradient(x);

  std::vector<std::size_t> coords;
  constexpr std::size_t kSampled = 50;
  if (n <= kSampled) {
    for (std::size_t i = 0; i < n; ++i) coords.push_back(i);
  } else {
    for (std::size_t j = 0; j < kSampled; ++j) coords.push_back(j * (n - 1) / (kSampled - 1));
  }

  // Errors are relative to the gradient's max-norm: the rounding noise of a
  // central difference scales with |f|, not with the coordinate being probed.
  double gmax = 1.0;
  for (double gi : g) gmax = std::max(gmax, std::abs(gi));

  Vector probe = x;
  double worst = 0.0;
  for (std::size_t i : coords) {
    const double step = 1e-6 * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + step;
    const double fp = obj.value(probe);
    probe[i] = x[i] - step;
    const double fm = obj.value(probe);
    probe[i] = x[i];
    const double fd = (fp - fm) / (2.0 * step);
    const double scale = std::max(gmax, std::abs(fd));
    worst = std::max(worst, std::abs(fd - g[i]) / scale);
  }
  return {worst <= tol, worst, coords.size()};
}

}  // namespace ulcm
