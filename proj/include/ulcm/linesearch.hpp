#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>

#include "ulcm/objective.hpp"

namespace ulcm {

struct LineSearchConfig {
  /// Initial segment length handed to localization.
  double initial_length = 1.0;
  /// Bracket-width tolerance. When `relative_tol` is set the effective
  /// tolerance is tol_h * (1 + max(|lo|, |hi|)) of the localized bracket.
  double tol_h = 1e-10;
  bool relative_tol = true;
  /// |g'(h)| <= tol_g stops bisection immediately.
  double tol_g = 0.0;
  /// Stop once the certified bound on g(h) - min g drops to this value.
  /// Only available with a derivative oracle; 0 disables it.
  double value_tol = 0.0;
  int max_doublings = 64;
  int max_bisections = 200;
  /// Search over all of R instead of h >= 0.
  bool two_sided = false;

  void validate() const;
};

struct LineSearchResult {
  double step = 0.0;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t value_calls = 0;
  std::size_t derivative_calls = 0;
  int doublings = 0;
  int bisections = 0;
  /// False when the iteration cap was hit before any tolerance was met.
  bool certified = true;
  /// Upper bound on value - min over the bracket; infinity when unknown.
  double value_gap_bound = std::numeric_limits<double>::infinity();
};

class UnboundedRayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Localization {
  /// The l returned by the doubling loop.
  double length;
  int doublings;

  /// A minimizer over [0, inf) lies in [lower(), upper()]. The loop stops
  /// because g(2l) > g(l), which by convexity rules out everything beyond 2l;
  /// after at least one doubling g(l) <= g(l/2) rules out [0, l/2).
  double lower() const noexcept { return doublings > 0 ? 0.5 * length : 0.0; }
  double upper() const noexcept { return 2.0 * length; }
};

/// l <- l0; while g(2l) <= g(l): l <- 2l. Throws UnboundedRayError once more
/// than max_doublings doublings happened.
Localization localize(RayFunction& g, double l0, int max_doublings = 64);

struct Bracket {
  double lo;
  double hi;
  /// Known one-sided derivatives at the ends, NaN when unknown.
  double deriv_lo = std::numeric_limits<double>::quiet_NaN();
  double deriv_hi = std::numeric_limits<double>::quiet_NaN();
};

/// Shrinks a bracket known to contain a minimizer. Sign bisection on g' when
/// the ray has a derivative oracle, golden-section on values otherwise.
LineSearchResult bisect_min(RayFunction& g, Bracket bracket, const LineSearchConfig& cfg);

/// Localization followed by bisect_min. The returned value never exceeds g(0).
LineSearchResult minimize_ray(RayFunction& g, const LineSearchConfig& cfg);

}  // namespace ulcm
