#include <doctest.h>

#include <chrono>
#include <cmath>
#include <limits>

#include "support.hpp"
#include "ulcm/problems.hpp"

using ulcm::Vector;
using ulcm::testing::Gen;

TEST_CASE("quadratic benchmark values") {
  CHECK(ulcm::quad_eval(1000, Vector(1000, 10.0)) == 100.0 * 1000 * 1001 / 2);
  CHECK(ulcm::quad_eval(4, Vector(4)) == 0.0);
  CHECK(ulcm::quad_grad(4, Vector(4)) == Vector(4));
  CHECK(ulcm::quad_eval(3, Vector{1, 1, 1}) == 6.0);
  CHECK(ulcm::quad_grad(3, Vector{1, 1, 1}) == Vector{2, 4, 6});
  CHECK_THROWS_AS(ulcm::quad_eval(3, Vector{1, 1}), ulcm::DimensionError);
}

TEST_CASE("quadratic gradient matches finite differences") {
  Gen gen(4);
  for (std::size_t n : {2u, 10u, 100u}) {
    ulcm::QuadraticProblem q(n);
    for (int t = 0; t < 100; ++t) CHECK(ulcm::finite_diff_check(q, gen.vector(n, -10, 10), 1e-5).passed);
  }
}

TEST_CASE("maxquad values") {
  CHECK(ulcm::maxquad_eval(1000, 0.1, Vector(1000, 10.0)) == doctest::Approx(5010.0).epsilon(1e-15));
  ulcm::MaxQuadProblem m(1000, 0.1);
  CHECK(*m.optimal_value() == doctest::Approx(-0.005).epsilon(1e-15));
  CHECK(m.value(*m.minimizer()) == doctest::Approx(-0.005).epsilon(1e-12));
  const Vector g = ulcm::maxquad_subgrad(3, 0.1, Vector{0, 1, 1});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(1.1));
  CHECK(g[2] == doctest::Approx(0.1));
  CHECK_THROWS_AS(ulcm::MaxQuadProblem(3, 0.0), std::invalid_argument);
}

TEST_CASE("maxquad subgradient inequality") {
  Gen gen(12);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = gen.index(1, 20);
    const double mu = gen.log_uniform(1e-2, 1.0);
    Vector x = gen.vector(n, -3, 3);
    if (t % 3 == 0 && n > 1) x[n - 1] = x[0];  // force ties sometimes
    const Vector y = gen.vector(n, -3, 3);
    const Vector g = ulcm::maxquad_subgrad(n, mu, x);
    const double lhs = ulcm::maxquad_eval(n, mu, y);
    const double rhs = ulcm::maxquad_eval(n, mu, x) + ulcm::dot(g, ulcm::axpy(-1.0, x, y));
    CHECK(lhs >= rhs - 1e-10);
  }
}

TEST_CASE("analytic optima survive random perturbations") {
  Gen gen(6);
  for (std::size_t n : {1u, 5u, 100u}) {
    ulcm::QuadraticProblem q(n);
    ulcm::MaxQuadProblem m(n, 0.1);
    for (int t = 0; t < 100; ++t) {
      const Vector p = gen.vector(n, -1e-3, 1e-3);
      CHECK(q.value(ulcm::axpy(1.0, p, *q.minimizer())) >= *q.optimal_value() - 1e-12);
      CHECK(m.value(ulcm::axpy(1.0, p, *m.minimizer())) >= *m.optimal_value() - 1e-12);
    }
  }
}

TEST_CASE("maxquad ray narrowing does not change values inside the bracket") {
  Gen gen(31);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 40;
    ulcm::MaxQuadProblem m(n, 0.1);
    const Vector x = gen.vector(n, -2, 2), d = gen.vector(n, -1, 1);
    auto ray = m.restrict_to_ray(x, d);
    const double lo = gen.uniform(0, 1), hi = lo + gen.uniform(0, 1);
    ray.narrow(lo, hi);
    for (int s = 0; s < 20; ++s) {
      const double h = gen.uniform(lo, hi);
      CHECK(ulcm::testing::rel_diff(ray.value(h), m.value(ulcm::axpy(h, d, x))) <= 1e-12);
      const Vector g = m.gradient(ulcm::axpy(h, d, x));
      CHECK(ulcm::testing::rel_diff(ray.derivative(h), ulcm::dot(g, d)) <= 1e-12);
    }
  }
}

TEST_CASE("composite with identity matrix") {
  const std::size_t n = 4;
  std::vector<double> eye(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) eye[i * n + i] = 1.0;
  ulcm::CompositeObjective f(n, eye, ulcm::parts::half_squared_distance(std::vector<double>(n, 0.0)),
                             ulcm::parts::l1(0.0));
  const Vector x{1, 2, 3, 4}, d{1, -1, 0.5, 0};
  auto ray = f.restrict_to_ray(x, d);
  for (double h : {-2.0, 0.0, 0.3, 5.0}) CHECK(ray.value(h) == 0.5 * ulcm::squared_norm(ulcm::axpy(h, d, x)));
}

TEST_CASE("composite cached and direct ray values agree") {
  Gen gen(50);
  const auto f = ulcm::make_random_composite(50, 3, 1.0);
  const Vector x = gen.vector(50, -1, 1), d = gen.vector(50, -1, 1);
  const std::size_t before = f->matvec_count();
  auto ray = f->restrict_to_ray(x, d);
  CHECK(f->matvec_count() - before == 2);
  std::vector<double> hs, cached;
  for (int t = 0; t < 100; ++t) {
    hs.push_back(gen.uniform(-3, 3));
    cached.push_back(ray.value(hs.back()));
    ray.derivative(hs.back());
  }
  CHECK(f->matvec_count() - before == 2);
  for (std::size_t t = 0; t < hs.size(); ++t)
    CHECK(ulcm::testing::rel_diff(cached[t], f->direct_ray_value(x, d, hs[t])) <= 1e-12);
}

TEST_CASE("composite gradient matches finite differences") {
  Gen gen(51);
  const auto f = ulcm::make_random_composite(20, 9, 0.0);
  for (int t = 0; t < 20; ++t) CHECK(ulcm::finite_diff_check(*f, gen.vector(20, -1, 1), 1e-5).passed);
  CHECK(f->value(*f->minimizer()) == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("composite rejects non-finite products") {
  const std::size_t n = 2;
  std::vector<double> a = {1e308, 1e308, 0, 1};
  ulcm::CompositeObjective f(n, a, ulcm::parts::half_squared_distance({0, 0}), ulcm::parts::l1(0.0));
  CHECK_THROWS_AS(f.restrict_to_ray(Vector{1e10, 1e10}, Vector{1, 1}), ulcm::NonFiniteError);
  CHECK_THROWS_AS(ulcm::CompositeObjective(2, {1, 0, 0}, ulcm::parts::half_squared_distance({0, 0}),
                                           ulcm::parts::l1(0.0)),
                  std::invalid_argument);
}

TEST_CASE("composite ray evaluation beats direct evaluation") {
  const std::size_t n = 2000;
  Gen gen(8);
  const auto f = ulcm::make_random_composite(n, 4);
  const Vector x = gen.vector(n, -1, 1), d = gen.vector(n, -1, 1);
  using clock = std::chrono::steady_clock;
  volatile double sink = 0;
  const auto t0 = clock::now();
  auto ray = f->restrict_to_ray(x, d);
  for (int i = 0; i < 100; ++i) sink = sink + ray.value(0.01 * i);
  const auto t1 = clock::now();
  for (int i = 0; i < 100; ++i) sink = sink + f->direct_ray_value(x, d, 0.01 * i);
  const auto t2 = clock::now();
  const double cached = std::chrono::duration<double>(t1 - t0).count();
  const double direct = std::chrono::duration<double>(t2 - t1).count();
  CHECK(direct >= 10 * cached);
}
