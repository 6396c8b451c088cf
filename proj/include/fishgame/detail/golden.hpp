#pragma once

#include <cmath>
#include <utility>

namespace fishgame::detail {

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Returns {argmax, max}. Stops when the bracket is below atol.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double atol,
                                     int max_iterations = 200) {
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < max_iterations && (hi - lo) > atol; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (lo + hi);
  return {xm, f(xm)};
}

}  // namespace fishgame::detail
