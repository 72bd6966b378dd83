#pragma once

#include <cmath>
#include <utility>

namespace mabench::numeric {

/// Bisection for an increasing function with f(lo) <= 0 <= f(hi). Stops
/// once hi - lo <= rel_tol * |hi| or the bracket can no longer be split.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, double rel_tol = 0.0, int max_iter = 400) {
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= rel_tol * std::abs(hi)) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section maximization of a unimodal function on [a, b].
/// Returns (argmax, max).
template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double tol = 1e-12,
                                             int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace mabench::numeric
