#include "ulcm/problems.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <random>

namespace ulcm {

// ---- problem (4): weighted quadratic -------------------------------------

QuadraticProblem::QuadraticProblem(std::size_t n) : Objective(n) {}

double QuadraticProblem::value(const Vector& x) const {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(i + 1) * x[i] * x[i];
  return s;
}

void QuadraticProblem::gradient(const Vector& x, Vector& g) const {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) g[i] = 2.0 * static_cast<double>(i + 1) * x[i];
}

RayFunction QuadraticProblem::restrict_to_ray(const Vector& x, const Vector& d) const {
  require_dimension(x);
  require_dimension(d);
  // f(x + h d) = a + 2 b h + c h^2
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = static_cast<double>(i + 1);
    a += w * x[i] * x[i];
    b += w * x[i] * d[i];
    c += w * d[i] * d[i];
  }
  return RayFunction([a, b, c](double h) { return a + h * (2.0 * b + h * c); },
                     [b, c](double h) { return 2.0 * (b + h * c); });
}

double quad_eval(std::size_t n, const Vector& x) {
  QuadraticProblem p(n);
  p.require_dimension(x);
  return p.value(x);
}

Vector quad_grad(std::size_t n, const Vector& x) {
  QuadraticProblem p(n);
  p.require_dimension(x);
  return p.gradient(x);
}

// ---- problem (5): max + quadratic ----------------------------------------

MaxQuadProblem::MaxQuadProblem(std::size_t n, double mu) : Objective(n), mu_(mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("MaxQuadProblem: mu must be positive");
}

namespace {

std::size_t first_argmax(const Vector& x) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (x[i] > x[j]) j = i;
  return j;
}

}  // namespace

double MaxQuadProblem::value(const Vector& x) const {
  return x[first_argmax(x)] + 0.5 * mu_ * squared_norm(x);
}

void MaxQuadProblem::gradient(const Vector& x, Vector& g) const {
  const std::size_t j = first_argmax(x);
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = mu_ * x[i];
  g[j] += 1.0;
}

std::optional<double> MaxQuadProblem::optimal_value() const {
  return -1.0 / (2.0 * mu_ * static_cast<double>(dimension()));
}

std::optional<Vector> MaxQuadProblem::minimizer() const {
  return Vector(dimension(), -1.0 / (mu_ * static_cast<double>(dimension())));
}

RayFunction MaxQuadProblem::restrict_to_ray(const Vector& x, const Vector& d) const {
  require_dimension(x);
  require_dimension(d);
  struct Lines {
    Vector x, d;
    double xx, xd, dd, mu;
    std::vector<std::size_t> active;

    // Lowest-index line attaining max_i x_i + h d_i among the active ones.
    std::size_t top(double h) const {
      std::size_t best = active.front();
      double best_v = x[best] + h * d[best];
      for (std::size_t i : active) {
        const double v = x[i] + h * d[i];
        if (v > best_v) {
          best_v = v;
          best = i;
        }
      }
      return best;
    }
    double line(std::size_t i, double h) const { return x[i] + h * d[i]; }
  };
  auto s = std::make_shared<Lines>();
  s->x = x;
  s->d = d;
  s->xx = squared_norm(x);
  s->xd = dot(x, d);
  s->dd = squared_norm(d);
  s->mu = mu_;
  s->active.resize(x.size());
  std::iota(s->active.begin(), s->active.end(), std::size_t{0});

  auto value = [s](double h) {
    return s->line(s->top(h), h) + 0.5 * s->mu * (s->xx + h * (2.0 * s->xd + h * s->dd));
  };
  auto derivative = [s](double h) { return s->d[s->top(h)] + s->mu * (s->xd + h * s->dd); };
  // A line lying below the top line at lo, or the one at hi, at both ends of
  // [lo, hi] is below it on the whole segment and can never be the max there.
  // Exact ties at both ends keep only the lower index, which wins ties anyway.
  auto narrow = [s](double lo, double hi) {
    if (s->active.size() <= 1 || !(lo < hi)) return;
    const std::size_t p = s->top(lo);
    const std::size_t q = s->top(hi);
    auto dominated_by = [&](std::size_t i, std::size_t k) {
      if (i == k) return false;
      const double lo_i = s->line(i, lo), hi_i = s->line(i, hi);
      const double lo_k = s->line(k, lo), hi_k = s->line(k, hi);
      if (lo_i < lo_k && hi_i <= hi_k) return true;
      if (lo_i <= lo_k && hi_i < hi_k) return true;
      return lo_i == lo_k && hi_i == hi_k && i > k;
    };
    std::vector<std::size_t> kept;
    kept.reserve(16);
    for (std::size_t i : s->active)
      if (!dominated_by(i, p) && !dominated_by(i, q)) kept.push_back(i);
    s->active.swap(kept);
  };
  return RayFunction(value, derivative, narrow);
}

double maxquad_eval(std::size_t n, double mu, const Vector& x) {
  MaxQuadProblem p(n, mu);
  p.require_dimension(x);
  return p.value(x);
}

Vector maxquad_subgrad(std::size_t n, double mu, const Vector& x) {
  MaxQuadProblem p(n, mu);
  p.require_dimension(x);
  return p.gradient(x);
}

// ---- composite phi(Ax) + psi(x) --------------------------------------------

CompositeObjective::CompositeObjective(std::size_t n, std::vector<double> matrix, Part phi, Part psi,
                                       std::optional<double> optimal_value,
                                       std::optional<Vector> minimizer)
    : Objective(n), a_(std::move(matrix)), phi_(std::move(phi)), psi_(std::move(psi)),
      optimal_(optimal_value), minimizer_(std::move(minimizer)) {
  if (a_.size() != n * n) throw DimensionError(n * n, a_.size());
  if (!phi_.value || !phi_.gradient || !psi_.value || !psi_.gradient)
    throw std::invalid_argument("CompositeObjective: null part oracle");
}

void CompositeObjective::multiply(std::span<const double> x, std::span<double> out) const {
  ++matvecs_;
  const std::size_t n = dimension();
  for (std::size_t r = 0; r < n; ++r) out[r] = kernels::dot({a_.data() + r * n, n}, x);
}

void CompositeObjective::multiply_transposed(std::span<const double> y, std::span<double> out) const {
  ++matvecs_;
  const std::size_t n = dimension();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = 0; r < n; ++r) kernels::axpy(y[r], {a_.data() + r * n, n}, out);
}

double CompositeObjective::value(const Vector& x) const {
  std::vector<double> v(dimension());
  multiply(x.span(), v);
  return phi_.value(v) + psi_.value(x.span());
}

void CompositeObjective::gradient(const Vector& x, Vector& g) const {
  const std::size_t n = dimension();
  std::vector<double> v(n), gv(n), gpsi(n);
  multiply(x.span(), v);
  phi_.gradient(v, gv);
  multiply_transposed(gv, g.span());
  psi_.gradient(x.span(), gpsi);
  kernels::axpy(1.0, gpsi, g.span());
}

double CompositeObjective::direct_ray_value(const Vector& x, const Vector& d, double h) const {
  return value(axpy(h, d, x));
}

RayFunction CompositeObjective::restrict_to_ray(const Vector& x, const Vector& d) const {
  require_dimension(x);
  require_dimension(d);
  const std::size_t n = dimension();
  struct Cache {
    Vector x, d;
    std::vector<double> v0, v1, v, u, grad_v, grad_u;
  };
  auto c = std::make_shared<Cache>();
  c->x = x;
  c->d = d;
  c->v0.resize(n);
  c->v1.resize(n);
  multiply(x.span(), c->v0);
  multiply(d.span(), c->v1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(c->v0[i]) || !std::isfinite(c->v1[i]))
      throw NonFiniteError("composite_restrict: non-finite matrix product");
  }
  c->v.resize(n);
  c->u.resize(n);
  c->grad_v.resize(n);
  c->grad_u.resize(n);
  auto move_to = [c](double h) {
    kernels::combine(1.0, c->v0, h, c->v1, c->v);
    kernels::combine(1.0, c->x.span(), h, c->d.span(), c->u);
  };
  const Part* phi = &phi_;
  const Part* psi = &psi_;
  return RayFunction(
      [c, move_to, phi, psi](double h) {
        move_to(h);
        return phi->value(c->v) + psi->value(c->u);
      },
      [c, move_to, phi, psi](double h) {
        move_to(h);
        phi->gradient(c->v, c->grad_v);
        psi->gradient(c->u, c->grad_u);
        return kernels::dot(c->grad_v, c->v1) + kernels::dot(c->grad_u, c->d.span());
      });
}

namespace parts {

CompositeObjective::Part half_squared_distance(std::vector<double> b) {
  auto target = std::make_shared<const std::vector<double>>(std::move(b));
  return {
      [target](std::span<const double> v) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const double r = v[i] - (*target)[i];
          s += r * r;
        }
        return 0.5 * s;
      },
      [target](std::span<const double> v, std::span<double> out) {
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - (*target)[i];
      },
  };
}

CompositeObjective::Part l1(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("l1: lambda must be non-negative");
  return {
      [lambda](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += std::abs(xi);
        return lambda * s;
      },
      [lambda](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i)
          out[i] = x[i] > 0.0 ? lambda : (x[i] < 0.0 ? -lambda : 0.0);
      },
  };
}

}  // namespace parts

std::unique_ptr<CompositeObjective> make_random_composite(std::size_t n, std::uint64_t seed,
                                                          double lambda) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 0.25 / std::sqrt(static_cast<double>(n));
  std::vector<double> a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col < n; ++col) a[r * n + col] = (r == col ? 1.0 : 0.0) + scale * normal(rng);
  std::vector<double> xbar(n);
  for (double& v : xbar) v = normal(rng);
  std::vector<double> b(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) b[r] = kernels::dot({a.data() + r * n, n}, xbar);

  std::optional<double> fstar;
  std::optional<Vector> xstar;
  if (lambda == 0.0) {
    fstar = 0.0;
    xstar = Vector(xbar);
  }
  return std::make_unique<CompositeObjective>(n, std::move(a), parts::half_squared_distance(std::move(b)),
                                              parts::l1(lambda), fstar, std::move(xstar));
}

}  // namespace ulcm
