#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "support.hpp"
#include "ulcm/objective.hpp"
#include "ulcm/problems.hpp"

using ulcm::Vector;
using ulcm::testing::Gen;

namespace {

ulcm::FunctionObjective half_norm(std::size_t n) {
  return ulcm::FunctionObjective(
      n, [](const Vector& x) { return 0.5 * ulcm::squared_norm(x); },
      [](const Vector& x, Vector& g) { g = x; }, 0.0);
}

std::vector<std::unique_ptr<ulcm::Objective>> zoo(std::size_t n) {
  std::vector<std::unique_ptr<ulcm::Objective>> out;
  out.push_back(std::make_unique<ulcm::QuadraticProblem>(n));
  out.push_back(std::make_unique<ulcm::MaxQuadProblem>(n, 0.1));
  out.push_back(ulcm::make_random_composite(n, 7, 0.3));
  out.push_back(std::make_unique<ulcm::FunctionObjective>(half_norm(n)));
  return out;
}

}  // namespace

TEST_CASE("finite differences on the diagonal quadratic at (1,1)") {
  ulcm::QuadraticProblem q(2);
  CHECK(q.gradient(Vector{1, 1}) == Vector{2, 4});
  const auto r = ulcm::finite_diff_check(q, Vector{1, 1}, 1e-5);
  CHECK(r.passed);
  CHECK(r.coordinates_checked == 2);
}

TEST_CASE("finite differences: half squared norm has gradient x") {
  Gen gen(3);
  const auto f = half_norm(5);
  for (int t = 0; t < 20; ++t) {
    const Vector x = gen.vector(5, -10, 10);
    CHECK(f.gradient(x) == x);
    CHECK(ulcm::finite_diff_check(f, x, 1e-5).passed);
  }
}

TEST_CASE("finite differences pass for maxquad away from ties") {
  ulcm::MaxQuadProblem m(4, 0.1);
  const auto r = ulcm::finite_diff_check(m, Vector{0.1, 2.0, -1.0, 0.5}, 1e-5);
  CHECK(r.passed);
  CHECK(r.max_rel_error < 1e-5);
}

TEST_CASE("finite differences detect a wrong gradient") {
  ulcm::FunctionObjective bad(
      2, [](const Vector& x) { return ulcm::squared_norm(x); },
      [](const Vector& x, Vector& g) { g = x; });
  CHECK_FALSE(ulcm::finite_diff_check(bad, Vector{1, 2}, 1e-5).passed);
}

TEST_CASE("finite differences sample coordinates in high dimension") {
  ulcm::QuadraticProblem q(500);
  const auto r = ulcm::finite_diff_check(q, Vector(500, 1.0), 1e-5);
  CHECK(r.passed);
  CHECK(r.coordinates_checked == 50);
}

TEST_CASE("midpoint convexity of every test objective") {
  Gen gen(11);
  for (const auto& obj : zoo(8)) {
    for (int t = 0; t < 100; ++t) {
      const Vector a = gen.vector(8, -5, 5), b = gen.vector(8, -5, 5);
      Vector mid(8);
      for (std::size_t i = 0; i < 8; ++i) mid[i] = 0.5 * (a[i] + b[i]);
      const double fa = obj->value(a), fb = obj->value(b);
      CHECK(obj->value(mid) <= 0.5 * (fa + fb) + 1e-12 * (1 + std::abs(fa) + std::abs(fb)));
    }
  }
}

TEST_CASE("ray restrictions agree with the objective") {
  Gen gen(5);
  for (const auto& obj : zoo(6)) {
    for (int t = 0; t < 100; ++t) {
      const Vector x = gen.vector(6, -3, 3), d = gen.vector(6, -1, 1);
      auto ray = obj->restrict_to_ray(x, d);
      CHECK(ulcm::testing::rel_diff(ray.value(0.0), obj->value(x)) <= 1e-12);
      const double h = gen.uniform(-4, 4);
      CHECK(ulcm::testing::rel_diff(ray.value(h), obj->value(ulcm::axpy(h, d, x))) <= 1e-12);
    }
  }
}

TEST_CASE("ray functions convex in h on sampled triples") {
  Gen gen(8);
  for (const auto& obj : zoo(5)) {
    const Vector x = gen.vector(5, -3, 3), d = gen.vector(5, -1, 1);
    auto ray = obj->restrict_to_ray(x, d);
    for (int t = 0; t < 100; ++t) {
      const double a = gen.uniform(-5, 5), b = gen.uniform(-5, 5);
      const double ga = ray.value(a), gb = ray.value(b);
      CHECK(ray.value(0.5 * (a + b)) <= 0.5 * (ga + gb) + 1e-12 * (1 + std::abs(ga) + std::abs(gb)));
    }
  }
}

TEST_CASE("ray function counters and missing derivative") {
  ulcm::RayFunction g([](double h) { return h * h; });
  CHECK_FALSE(g.has_derivative());
  g.value(1.0);
  g.value(2.0);
  CHECK(g.value_calls() == 2);
  CHECK_THROWS(g.derivative(0.0));
}

TEST_CASE("objectives validate dimensions") {
  ulcm::QuadraticProblem q(3);
  CHECK_THROWS_AS(q.require_dimension(Vector{1, 2}), ulcm::DimensionError);
  CHECK_THROWS_AS(ulcm::QuadraticProblem(0), std::invalid_argument);
}
