#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fishgame/errors.hpp"
#include "fishgame/model.hpp"

namespace fishgame {

/// Quadratic A*Y^2 + B*Y + C >= 0 whose outer region (below the smaller root)
/// is the set of viable total yields, together with its roots.
///
/// For positive yield the two capacity bounds are compatible exactly when
///   k*p <= q*S(Y) * (P(Y) - f(Y) - m),
/// a condition on total yield alone; expanding it gives the quadratic with
///   A = b*q*s,  B = -q*(b*r + s*l),  C = q*(r*l - h) - k*p,  l = a - g - m.
struct ViabilityResult {
  double quad_a = 0;
  double quad_b = 0;
  double quad_c = 0;
  double delta = 0;      ///< discriminant, strictly positive for valid params
  double t1 = 0;         ///< smaller root; the viability threshold T
  double t2 = 0;         ///< larger root, always beyond r/s
  double threshold = 0;  ///< == t1
  bool valid = false;    ///< t1 > 0
};

/// Computes the quadratic and its roots without insisting on T > 0.
/// Throws MeaninglessMargin when l <= 0.
inline ViabilityResult viability_quadratic(const MarketStockParams& market,
                                           const PlayerParams& me) {
  const double l = cost_margin(market, me);
  if (l <= 0.0) {
    throw error(errc::meaningless_margin,
                "price/cost margin a - g - m = " + std::to_string(l));
  }
  const double b = market.b, r = market.r, s = market.s;
  const double q = me.q, kp = me.k * me.p;

  ViabilityResult out;
  out.quad_a = b * q * s;
  out.quad_b = -q * (b * r + s * l);
  out.quad_c = q * (r * l - me.h) - kp;

  const double diff = b * r - s * l;
  out.delta = q * q * diff * diff + 4.0 * q * b * s * (q * me.h + kp);

  const double sqrt_delta = std::sqrt(out.delta);
  // -B > 0, so t2 is the numerically safe root; t1 comes from the product
  // t1*t2 = C/A, which avoids cancellation when C is small.
  out.t2 = (-out.quad_b + sqrt_delta) / (2.0 * out.quad_a);
  out.t1 = out.quad_c / (out.quad_a * out.t2);
  out.threshold = out.t1;
  out.valid = out.t1 > 0.0;
  return out;
}

/// Closed-form viability threshold T: the largest total yield at which the
/// effort and finance bounds still leave room for a capacity choice.
/// Throws NotRealistic when the parameters admit no positive viable yield.
inline ViabilityResult viability_threshold(const MarketStockParams& market,
                                           const PlayerParams& me) {
  ViabilityResult res = viability_quadratic(market, me);
  if (!res.valid) {
    throw error(errc::not_realistic,
                "viability threshold " + std::to_string(res.t1) + " is not positive");
  }
  return res;
}

/// Partial derivatives of T with respect to efficiency q, rate of return k,
/// and the margin l. Signs are (+, -, +); dT/dq degenerates to 0 when k = 0.
struct Sensitivities {
  double dT_dq = 0;
  double dT_dk = 0;
  double dT_dl = 0;
};

inline Sensitivities threshold_sensitivities(const MarketStockParams& market,
                                             const PlayerParams& me) {
  const ViabilityResult res = viability_threshold(market, me);
  const double sqrt_delta = std::sqrt(res.delta);
  const double l = cost_margin(market, me);
  Sensitivities sens;
  sens.dT_dq = me.k * me.p / (me.q * sqrt_delta);
  sens.dT_dk = -me.p / sqrt_delta;
  sens.dT_dl = (sqrt_delta + me.q * (market.b * market.r - l * market.s)) /
               (2.0 * market.b * sqrt_delta);
  return sens;
}

/// Brute-force threshold: scan total yield over [0, r/s) and return the
/// largest value whose feasible interval (alone on the stock) is non-empty.
/// Deliberately ignores the quadratic so it can serve as an independent check;
/// the result is within one grid step (r/s / resolution) of the true T.
inline double viability_threshold_oracle(const MarketStockParams& market,
                                         const PlayerParams& me,
                                         std::size_t resolution = 100000) {
  if (resolution < 1000) {
    throw error(errc::non_positive_parameter, "oracle resolution must be >= 1000");
  }
  const double step = market.r / market.s / static_cast<double>(resolution);
  double best = 0.0;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double y = static_cast<double>(i) * step;
    const FeasibleInterval iv = feasible_interval(market, me, y, 0.0);
    if (!iv.empty()) best = y;
  }
  return best;
}

/// Collects every violation at once: positivity, margin l > 0, threshold T > 0.
inline std::vector<Issue> validate(const MarketStockParams& market,
                                   const PlayerParams& me) {
  std::vector<Issue> issues;
  detail::check_positive(issues, market.a, "a");
  detail::check_positive(issues, market.b, "b");
  detail::check_positive(issues, market.r, "r");
  detail::check_positive(issues, market.s, "s");
  detail::check_positive(issues, me.q, "q");
  detail::check_positive(issues, me.p, "p");
  detail::check_non_negative(issues, me.k, "k");
  detail::check_non_negative(issues, me.g, "g");
  detail::check_non_negative(issues, me.h, "h");
  detail::check_non_negative(issues, me.m, "m");
  if (!issues.empty()) return issues;

  const double l = cost_margin(market, me);
  if (l <= 0.0) {
    issues.push_back({errc::meaningless_margin,
                      "margin a - g - m = " + std::to_string(l) + " is not positive"});
    return issues;
  }
  const ViabilityResult res = viability_quadratic(market, me);
  if (!res.valid) {
    issues.push_back({errc::not_realistic,
                      "viability threshold " + std::to_string(res.t1) + " is not positive"});
  }
  return issues;
}

/// Throws a single aggregated error when validate() reports anything.
/// Margin/realism problems keep their own code so callers can tell a broken
/// scenario from a merely non-viable one.
inline void require_valid(const MarketStockParams& market, const PlayerParams& me) {
  const std::vector<Issue> issues = validate(market, me);
  if (issues.empty()) return;
  std::string msg;
  bool structural = false;
  for (const Issue& is : issues) {
    if (!msg.empty()) msg += "; ";
    msg += std::string(errc_name(is.code)) + ": " + is.message;
    if (is.code != errc::meaningless_margin && is.code != errc::not_realistic)
      structural = true;
  }
  if (!me.id.empty()) msg = "player " + me.id + ": " + msg;
  throw error(structural ? errc::validation_error : issues.front().code, msg);
}

}  // namespace fishgame
