#pragma once

#include <cmath>

namespace fishgame::detail {

/// Bisection solve of f(x) = target for monotone f on [lo, hi].
/// The caller guarantees that target lies between f(lo) and f(hi).
/// Runs to near machine precision on the interval; f is assumed cheap.
template <typename F>
double bisect_monotone(F&& f, double lo, double hi, double target,
                       int max_iterations = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  const bool increasing = fhi >= flo;
  for (int i = 0; i < max_iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in fp
    const double fmid = f(mid);
    if (fmid == target) return mid;
    const bool go_right = increasing ? (fmid < target) : (fmid > target);
    if (go_right) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fishgame::detail
