#include "ulcm/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ulcm {

void LineSearchConfig::validate() const {
  if (!(initial_length > 0.0) || !std::isfinite(initial_length))
    throw std::invalid_argument("LineSearchConfig: initial_length must be positive");
  if (!(tol_h > 0.0)) throw std::invalid_argument("LineSearchConfig: tol_h must be positive");
  if (tol_g < 0.0 || value_tol < 0.0)
    throw std::invalid_argument("LineSearchConfig: tolerances must be non-negative");
  if (max_doublings < 1 || max_bisections < 1)
    throw std::invalid_argument("LineSearchConfig: caps must be >= 1");
}

namespace {

double known_abs(double d) { return std::isnan(d) ? std::numeric_limits<double>::infinity() : std::abs(d); }

// Doubling loop on h -> g(sign * h).
Localization localize_along(RayFunction& g, double l0, int max_doublings, double sign) {
  double l = l0;
  double gl = g.value(sign * l);
  int doublings = 0;
  while (true) {
    const double g2l = g.value(sign * 2.0 * l);
    // A non-finite g(l) means l is already past the minimizer.
    if (!(g2l <= gl) || !std::isfinite(gl)) return {l, doublings};
    if (doublings == max_doublings) {
      throw UnboundedRayError("localize: unbounded below or minimizer beyond 2^" +
                              std::to_string(max_doublings) + " * l0");
    }
    l *= 2.0;
    gl = g2l;
    ++doublings;
  }
}

LineSearchResult bisect_derivative(RayFunction& g, Bracket br, double tol, const LineSearchConfig& cfg) {
  LineSearchResult r;
  double a = br.lo, b = br.hi;
  double ga = br.deriv_lo, gb = br.deriv_hi;
  bool done = false;
  for (int it = 0; it < cfg.max_bisections; ++it) {
    if (b - a <= tol) {
      done = true;
      break;
    }
    if (cfg.value_tol > 0.0 && std::max(known_abs(ga), known_abs(gb)) * (b - a) <= cfg.value_tol) {
      done = true;
      break;
    }
    const double mid = a + 0.5 * (b - a);
    const double dm = g.derivative(mid);
    ++r.bisections;
    if (std::abs(dm) <= cfg.tol_g) {
      r.step = mid;
      r.value = g.value(mid);
      // g'(mid) = 0 makes mid a minimizer; otherwise keep the bracket.
      r.lo = dm == 0.0 ? mid : a;
      r.hi = dm == 0.0 ? mid : b;
      r.value_gap_bound = std::abs(dm) * 0.5 * (b - a);
      return r;
    }
    if (dm > 0.0) {
      b = mid;
      gb = dm;
    } else {
      a = mid;
      ga = dm;
    }
    if (r.bisections % 4 == 0) g.narrow(a, b);
  }
  if (!done) done = b - a <= tol;
  r.certified = done;
  r.lo = a;
  r.hi = b;
  r.step = a + 0.5 * (b - a);
  r.value = g.value(r.step);
  // g' is monotone, so |g'(step)| <= max(|g'(a)|, |g'(b)|) and the minimizer
  // is within the bracket.
  r.value_gap_bound = std::max(known_abs(ga), known_abs(gb)) * (b - a);
  return r;
}

LineSearchResult golden_section(RayFunction& g, Bracket br, double tol, const LineSearchConfig& cfg) {
  constexpr double kInvPhi = 0.6180339887498949;
  LineSearchResult r;
  double a = br.lo, b = br.hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = g.value(c);
  double fd = g.value(d);
  bool done = false;
  for (int it = 0; it < cfg.max_bisections; ++it) {
    if (b - a <= tol) {
      done = true;
      break;
    }
    ++r.bisections;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = g.value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = g.value(d);
    }
    if (r.bisections % 4 == 0) g.narrow(a, b);
  }
  if (!done) done = b - a <= tol;
  r.certified = done;
  r.lo = a;
  r.hi = b;
  r.step = a + 0.5 * (b - a);
  r.value = g.value(r.step);
  return r;
}

}  // namespace

Localization localize(RayFunction& g, double l0, int max_doublings) {
  if (!(l0 > 0.0)) throw std::invalid_argument("localize: l0 must be positive");
  return localize_along(g, l0, max_doublings, 1.0);
}

LineSearchResult bisect_min(RayFunction& g, Bracket bracket, const LineSearchConfig& cfg) {
  if (!(bracket.lo <= bracket.hi)) throw std::invalid_argument("bisect_min: empty bracket");
  const std::size_t v0 = g.value_calls();
  const std::size_t d0 = g.derivative_calls();
  const double scale = cfg.relative_tol ? 1.0 + std::max(std::abs(bracket.lo), std::abs(bracket.hi)) : 1.0;
  const double tol = cfg.tol_h * scale;
  g.narrow(bracket.lo, bracket.hi);
  LineSearchResult r = g.has_derivative() ? bisect_derivative(g, bracket, tol, cfg)
                                          : golden_section(g, bracket, tol, cfg);
  r.step = std::clamp(r.step, r.lo, r.hi);
  r.value_calls = g.value_calls() - v0;
  r.derivative_calls = g.derivative_calls() - d0;
  return r;
}

LineSearchResult minimize_ray(RayFunction& g, const LineSearchConfig& cfg) {
  cfg.validate();
  const std::size_t v0 = g.value_calls();
  const std::size_t dc0 = g.derivative_calls();
  const double g0 = g.value(0.0);
  const double deriv0 = g.has_derivative() ? g.derivative(0.0) : std::numeric_limits<double>::quiet_NaN();

  auto at_zero = [&] {
    LineSearchResult r;
    r.step = 0.0;
    r.value = g0;
    r.value_gap_bound = 0.0;
    r.value_calls = g.value_calls() - v0;
    r.derivative_calls = g.derivative_calls() - dc0;
    return r;
  };

  // Which way is downhill. +1, -1, or 0 when h = 0 is already minimal.
  double sign = 1.0;
  Bracket bracket{0.0, 0.0};
  bool bracketed = false;
  if (!cfg.two_sided) {
    if (deriv0 >= 0.0) return at_zero();
  } else if (g.has_derivative()) {
    if (deriv0 == 0.0) return at_zero();
    sign = deriv0 < 0.0 ? 1.0 : -1.0;
  } else {
    const double l = cfg.initial_length;
    const double gp = g.value(l);
    const double gm = g.value(-l);
    if (gp < g0) {
      sign = 1.0;
    } else if (gm < g0) {
      sign = -1.0;
    } else {
      // g(-l) >= g(0) <= g(l): some minimizer over R lies in [-l, l].
      bracket = {-l, l};
      bracketed = true;
    }
  }

  int doublings = 0;
  if (!bracketed) {
    const Localization loc = localize_along(g, cfg.initial_length, cfg.max_doublings, sign);
    doublings = loc.doublings;
    if (sign > 0.0) {
      bracket = {loc.lower(), loc.upper()};
      if (loc.lower() == 0.0) bracket.deriv_lo = deriv0;
    } else {
      bracket = {-loc.upper(), -loc.lower()};
      if (loc.lower() == 0.0) bracket.deriv_hi = deriv0;
    }
  }

  LineSearchResult r = bisect_min(g, bracket, cfg);
  r.doublings = doublings;
  if (!(r.value <= g0)) {
    r.step = 0.0;
    r.value = g0;
    r.lo = std::min(r.lo, 0.0);
    r.hi = std::max(r.hi, 0.0);
  }
  r.value_calls = g.value_calls() - v0;
  r.derivative_calls = g.derivative_calls() - dc0;
  return r;
}

}  // namespace ulcm
