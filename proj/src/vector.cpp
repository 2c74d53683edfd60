#include "ulcm/vector.hpp"

#include <algorithm>
#include <cmath>

namespace ulcm {

DimensionError::DimensionError(std::size_t expected, std::size_t got)
    : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                            std::to_string(got)) {}

namespace {

void require_finite(const std::vector<double>& v, const char* where) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NonFiniteError(std::string(where) + ": non-finite coordinate");
  }
}

}  // namespace

Vector::Vector(std::size_t n, double fill) : data_(n, fill) {
  if (!std::isfinite(fill)) throw NonFiniteError("Vector: non-finite fill value");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite(data_, "Vector");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  require_finite(data_, "Vector");
}

bool Vector::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

void require_same_size(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError(a.size(), b.size());
}

double dot(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  return kernels::dot(a.span(), b.span());
}

Vector axpy(double a, const Vector& x, const Vector& y) {
  require_same_size(x, y);
  Vector out = y;
  kernels::axpy(a, x.span(), out.span());
  if (!out.all_finite()) throw NonFiniteError("axpy: non-finite result");
  return out;
}

double squared_norm(const Vector& x) noexcept { return kernels::dot(x.span(), x.span()); }

double norm(const Vector& x) noexcept { return std::sqrt(squared_norm(x)); }

double distance(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace kernels {

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void combine(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) noexcept {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace kernels

}  // namespace ulcm
