#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>

#include "ulcm/vector.hpp"

namespace ulcm::testing {

/// Seeded source of random test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  Vector vector(std::size_t n, double lo, double hi) {
    Vector v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Grid argmin of g on [lo, hi], refined by zooming into the best cell.
/// Valid for convex g with a unique minimizer.
inline double grid_argmin(const std::function<double(double)>& g, double lo, double hi,
                          int points = 10001, int rounds = 4) {
  double best = lo;
  for (int r = 0; r < rounds; ++r) {
    const double step = (hi - lo) / (points - 1);
    double best_val = g(lo);
    best = lo;
    for (int i = 1; i < points; ++i) {
      const double h = lo + step * i;
      const double v = g(h);
      if (v < best_val) {
        best_val = v;
        best = h;
      }
    }
    const double nlo = std::max(lo, best - step), nhi = std::min(hi, best + step);
    lo = nlo;
    hi = nhi;
  }
  return best;
}

/// Convex 1-D function with a known unique minimizer and min value 0,
/// written so values near the minimizer keep full relative precision.
struct ConvexRay {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double minimizer;
  int family;
};

inline ConvexRay random_convex_ray(Gen& gen, double m_lo = 0.0, double m_hi = 100.0) {
  const int family = static_cast<int>(gen.index(0, 4));
  const double m = gen.uniform(m_lo, m_hi);
  switch (family) {
    case 0: {
      const double c = gen.log_uniform(1e-3, 1e3);
      return {[=](double h) { return c * (h - m) * (h - m); },
              [=](double h) { return 2 * c * (h - m); }, m, family};
    }
    case 1: {
      const double a = gen.uniform(0.01, 1.0);
      return {[=](double h) { return std::abs(h - m) + a * (h - m) * (h - m); },
              [=](double h) { return (h >= m ? 1.0 : -1.0) + 2 * a * (h - m); }, m, family};
    }
    case 2: {
      const double b = gen.uniform(0.1, 3.0);
      return {[=](double h) { return std::expm1(b * (h - m)) - b * (h - m); },
              [=](double h) { return b * std::expm1(b * (h - m)); }, m, family};
    }
    case 3: {
      const double c = gen.log_uniform(0.1, 10.0);
      return {[=](double h) {
                const double d = h - m;
                return c * d * d / (std::sqrt(1 + d * d) + 1);
              },
              [=](double h) {
                const double d = h - m;
                return c * d / std::sqrt(1 + d * d);
              },
              m, family};
    }
    default: {
      const double s = gen.uniform(0.1, 5.0), t = gen.uniform(0.1, 5.0);
      return {[=](double h) {
                const double d = h - m;
                return std::max(-s * d, t * d) + 1e-3 * d * d;
              },
              [=](double h) {
                const double d = h - m;
                return (d >= 0 ? t : -s) + 2e-3 * d;
              },
              m, family};
    }
  }
}

}  // namespace ulcm::testing
