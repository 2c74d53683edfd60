#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ulcm {

class DimensionError : public std::invalid_argument {
 public:
  DimensionError(std::size_t expected, std::size_t got);
};

class NonFiniteError : public std::domain_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::domain_error(what) {}
};

/// Dense vector of doubles. Every coordinate is finite on construction.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<double> span() noexcept { return data_; }
  std::span<const double> span() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  bool all_finite() const noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

void require_same_size(const Vector& a, const Vector& b);

double dot(const Vector& a, const Vector& b);

/// Returns a*x + y. Throws on size mismatch or a non-finite result.
Vector axpy(double a, const Vector& x, const Vector& y);

double squared_norm(const Vector& x) noexcept;
double norm(const Vector& x) noexcept;
double distance(const Vector& a, const Vector& b);

// Unchecked in-place kernels for the solver inner loops. Sizes are validated
// once per run by the caller.
namespace kernels {

/// y += a*x
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
/// out = a*x + b*y
void combine(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace kernels

}  // namespace ulcm
