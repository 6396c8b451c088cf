#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fishgame/detail/bisect.hpp"
#include "fishgame/detail/golden.hpp"
#include "fishgame/errors.hpp"
#include "fishgame/model.hpp"
#include "fishgame/viability.hpp"

namespace fishgame {

enum class Objective { profit, capacity };
enum class Side { a, b };

inline Side other(Side s) { return s == Side::a ? Side::b : Side::a; }
inline const char* objective_name(Objective o) {
  return o == Objective::profit ? "profit" : "capacity";
}

struct SolverSettings {
  double tolerance = 0;  ///< yield convergence tolerance; 0 = 1e-6 * (r/s)
  int max_iterations = 500;
  double init_yield_a = 0;
  double init_yield_b = 0;
  int scan_points = 2048;  ///< coarse grid for the profit best response
};

struct GameConfig {
  MarketStockParams market;
  PlayerParams player_a;
  PlayerParams player_b;
  Objective objective = Objective::profit;
  SolverSettings solver;

  const PlayerParams& player(Side s) const {
    return s == Side::a ? player_a : player_b;
  }

  /// Scale-free defaults: tolerances are relative to the natural yield scale r/s.
  double yield_tolerance() const {
    return solver.tolerance > 0 ? solver.tolerance : 1e-6 * market.r / market.s;
  }
  double equality_tolerance() const { return yield_tolerance(); }
};

inline void require_valid(const GameConfig& config) {
  require_valid(config.market, config.player_a);
  require_valid(config.market, config.player_b);
  if (config.player_a.id == config.player_b.id) {
    throw error(errc::validation_error, "players must have distinct ids");
  }
  if (!(config.yield_tolerance() > 0) || config.solver.max_iterations < 1 ||
      config.solver.init_yield_a < 0 || config.solver.init_yield_b < 0 ||
      config.solver.scan_points < 1024) {
    throw error(errc::validation_error, "bad solver settings");
  }
}

/// One player's move: a yield/capacity pair plus its payoff under the game
/// objective. A dead strategy (alive = false) is all zeros.
struct Strategy {
  double yield = 0;
  double capacity = 0;
  double payoff = 0;
  bool alive = false;

  static Strategy dead() { return {}; }
};

namespace detail {

/// Profit as a function of own yield with the rival's yield held fixed.
inline double own_profit(const MarketStockParams& market, const PlayerParams& me,
                         double y, double y_rival) {
  return endogenous_state(market, me, y, y_rival).profit;
}

/// Maximizes profit over [0, y_hi]: coarse scan to bracket the global maximum,
/// golden-section refinement, then an exact comparison against both endpoints
/// so corner solutions are hit exactly.
inline double profit_best_yield(const MarketStockParams& market,
                                const PlayerParams& me, double y_rival,
                                double y_hi, int scan_points) {
  const int n = std::max(scan_points, 1024);
  double best_y = 0.0;
  double best_v = own_profit(market, me, 0.0, y_rival);
  for (int i = 1; i <= n; ++i) {
    const double y = y_hi * static_cast<double>(i) / static_cast<double>(n);
    const double v = own_profit(market, me, y, y_rival);
    if (v > best_v) {
      best_v = v;
      best_y = y;
    }
  }
  const double step = y_hi / static_cast<double>(n);
  const double lo = std::max(0.0, best_y - step);
  const double hi = std::min(y_hi, best_y + step);
  const double atol = std::max(1e-11 * y_hi, 1e-13 * market.r / market.s);
  auto [yr, vr] = golden_max(
      [&](double y) { return own_profit(market, me, y, y_rival); }, lo, hi, atol);
  // Endpoints win ties so boundary optima are exact.
  double y_best = yr;
  double v_best = vr;
  for (double cand : {0.0, y_hi}) {
    const double v = own_profit(market, me, cand, y_rival);
    if (v >= v_best) {
      v_best = v;
      y_best = cand;
    }
  }
  return y_best;
}

}  // namespace detail

/// Optimal reply to the rival's yield. Profit players maximize profit over the
/// viable range and carry the minimal capacity E = Y/(qS); capacity players
/// take the full-utilization corner, driving total yield to their threshold.
/// Returns the dead strategy when the rival's yield leaves no viable room.
inline Strategy best_response(const GameConfig& config, Side side, double rival_yield) {
  if (rival_yield < 0) {
    throw error(errc::validation_error, "rival yield must be non-negative");
  }
  const PlayerParams& me = config.player(side);
  const double t_me = viability_threshold(config.market, me).threshold;
  const double y_hi = t_me - rival_yield;
  if (y_hi <= 0.0) return Strategy::dead();

  Strategy st;
  st.alive = true;
  if (config.objective == Objective::capacity) {
    st.yield = y_hi;
    const EndogenousState es = endogenous_state(config.market, me, st.yield, rival_yield);
    st.capacity = es.effort;
    st.payoff = st.capacity;
  } else {
    st.yield = detail::profit_best_yield(config.market, me, rival_yield, y_hi,
                                         config.solver.scan_points);
    const EndogenousState es = endogenous_state(config.market, me, st.yield, rival_yield);
    st.capacity = es.effort;
    st.payoff = es.profit;
  }
  return st;
}

/// Outcome of the best-response iteration. `trace` holds the initial yield
/// pair followed by one entry per half-step (A's move, then B's move).
struct EquilibriumResult {
  Strategy strategy_a;
  Strategy strategy_b;
  int iterations = 0;
  std::vector<std::array<double, 2>> trace;
  bool converged = false;
  bool degenerate_continuum = false;
  std::optional<Side> excluded;
};

/// Gauss-Seidel best-response dynamics: A replies, then B, until yields stop
/// moving. A player whose viable range vanishes goes out of business and does
/// not re-enter. Under capacity maximization with equal thresholds the result
/// is one point of an equilibrium continuum and is flagged as such.
/// Non-convergence is reported through `converged`, with the trace intact.
inline EquilibriumResult solve_equilibrium(const GameConfig& config) {
  require_valid(config);
  const double tol = config.yield_tolerance();
  const double t_a = viability_threshold(config.market, config.player_a).threshold;
  const double t_b = viability_threshold(config.market, config.player_b).threshold;

  EquilibriumResult res;
  res.degenerate_continuum = config.objective == Objective::capacity &&
                             std::abs(t_a - t_b) <= config.equality_tolerance();

  double y_a = config.solver.init_yield_a;
  double y_b = config.solver.init_yield_b;
  bool dead_a = false, dead_b = false;
  Strategy st_a = Strategy::dead();
  Strategy st_b = Strategy::dead();
  res.trace.push_back({y_a, y_b});

  for (int iter = 1; iter <= config.solver.max_iterations; ++iter) {
    const double prev_a = y_a, prev_b = y_b;

    if (!dead_a) {
      st_a = best_response(config, Side::a, y_b);
      if (!st_a.alive) dead_a = true;
    }
    y_a = st_a.yield;
    res.trace.push_back({y_a, y_b});

    if (!dead_b) {
      st_b = best_response(config, Side::b, y_a);
      if (!st_b.alive) dead_b = true;
    }
    y_b = st_b.yield;
    res.trace.push_back({y_a, y_b});

    res.iterations = iter;
    if (std::abs(y_a - prev_a) < tol && std::abs(y_b - prev_b) < tol) {
      res.converged = true;
      break;
    }
  }

  res.strategy_a = st_a;
  res.strategy_b = st_b;
  if (dead_a && !dead_b) res.excluded = Side::a;
  if (dead_b && !dead_a) res.excluded = Side::b;
  return res;
}

enum class Regime { equal, slight, different };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::equal: return "equal";
    case Regime::slight: return "slight";
    case Regime::different: return "different";
  }
  return "?";
}

struct RegimeReport {
  double t_a = 0;
  double t_b = 0;
  double gap = 0;
  Regime regime = Regime::equal;
  Side dominant = Side::a;
  std::string predicted_outcome;
};

/// Classifies the threshold configuration. Beyond the equality tolerance, the
/// split between "slight" and "different" is functional: the gap is "different"
/// once the dominant player's own profit-optimal yield (against an idle rival)
/// overshoots the rival's threshold, because the dominant player then has no
/// reason to leave room for the rival. `slight_gap_bound` optionally caps the
/// absolute gap still reported as slight.
inline RegimeReport classify_regime(
    const GameConfig& config, double equality_tolerance = 0,
    double slight_gap_bound = std::numeric_limits<double>::infinity()) {
  require_valid(config);
  const double eq_tol =
      equality_tolerance > 0 ? equality_tolerance : config.equality_tolerance();

  RegimeReport rep;
  rep.t_a = viability_threshold(config.market, config.player_a).threshold;
  rep.t_b = viability_threshold(config.market, config.player_b).threshold;
  rep.gap = std::abs(rep.t_a - rep.t_b);
  rep.dominant = rep.t_a >= rep.t_b ? Side::a : Side::b;

  if (rep.gap <= eq_tol) {
    rep.regime = Regime::equal;
  } else {
    const PlayerParams& dom = config.player(rep.dominant);
    const double t_dom = std::max(rep.t_a, rep.t_b);
    const double t_other = std::min(rep.t_a, rep.t_b);
    const double dom_opt = detail::profit_best_yield(config.market, dom, 0.0, t_dom,
                                                     config.solver.scan_points);
    rep.regime = (dom_opt > t_other || rep.gap > slight_gap_bound)
                     ? Regime::different
                     : Regime::slight;
  }

  const bool capacity = config.objective == Objective::capacity;
  switch (rep.regime) {
    case Regime::equal:
      rep.predicted_outcome =
          capacity ? "continuum of equilibria: every split of the common "
                     "threshold total is stationary; the split must be agreed on"
                   : "unique equilibrium with both systems active; a bargaining "
                     "set is available";
      break;
    case Regime::slight:
      rep.predicted_outcome =
          capacity ? "single equilibrium; the dominant system alone survives "
                     "and the bargaining set is empty"
                   : "unique equilibrium with both systems active; the "
                     "bargaining set persists but is irregular";
      break;
    case Regime::different:
      rep.predicted_outcome =
          "single equilibrium; the dominant system alone survives and the "
          "bargaining set is empty";
      break;
  }
  return rep;
}

enum class Lever { rate_of_return, efficiency, cost_margin };

inline const char* lever_name(Lever lv) {
  switch (lv) {
    case Lever::rate_of_return: return "rate_of_return";
    case Lever::efficiency: return "efficiency";
    case Lever::cost_margin: return "cost_margin";
  }
  return "?";
}

/// Rebuilds the player with the lever set to `value` (k, q, or the margin l,
/// the latter applied through the market-access cost m).
inline PlayerParams apply_lever(const MarketStockParams& market,
                                const PlayerParams& me, Lever lever, double value) {
  PlayerParams out = me;
  switch (lever) {
    case Lever::rate_of_return: out.k = value; break;
    case Lever::efficiency: out.q = value; break;
    case Lever::cost_margin: out.m = market.a - me.g - value; break;
  }
  return out;
}

namespace detail {

inline double threshold_at_lever(const MarketStockParams& market,
                                 const PlayerParams& me, Lever lever, double value) {
  return viability_quadratic(market, apply_lever(market, me, lever, value)).t1;
}

}  // namespace detail

/// Finds the lever value at which the player's viability threshold equals
/// `target_threshold`, by bisection on the monotone threshold response.
/// Throws Unachievable when the target lies outside the lever's range.
inline double equalize(const MarketStockParams& market, const PlayerParams& me,
                       Lever lever, double target_threshold) {
  require_valid(market, me);
  if (!(target_threshold > 0) || !std::isfinite(target_threshold)) {
    throw error(errc::unachievable, "target threshold must be positive");
  }
  auto t_of = [&](double v) { return detail::threshold_at_lever(market, me, lever, v); };

  double lo = 0, hi = 0;
  switch (lever) {
    case Lever::rate_of_return: {
      // T decreases in k; the supremum is at k = 0.
      const double t_max = t_of(0.0);
      if (target_threshold > t_max) {
        throw error(errc::unachievable,
                    "target exceeds threshold at zero rate of return (" +
                        std::to_string(t_max) + ")");
      }
      lo = 0.0;
      hi = std::max(me.k, 1.0);
      while (t_of(hi) > target_threshold) {
        hi *= 2.0;
        if (hi > 1e100) throw error(errc::unachievable, "no bracketing rate of return");
      }
      break;
    }
    case Lever::efficiency: {
      if (me.k * me.p == 0.0) {
        // T does not depend on q without a finance imperative.
        const double t_now = t_of(me.q);
        if (std::abs(t_now - target_threshold) <= 1e-9 * target_threshold) return me.q;
        throw error(errc::unachievable,
                    "threshold does not respond to efficiency when k = 0");
      }
      // T increases in q towards a finite supremum.
      const double diff = market.b * market.r - market.s * cost_margin(market, me);
      const double sup =
          (market.b * market.r + market.s * cost_margin(market, me) -
           std::sqrt(diff * diff + 4.0 * market.b * market.s * me.h)) /
          (2.0 * market.b * market.s);
      if (target_threshold >= sup) {
        throw error(errc::unachievable, "target at or above the efficiency limit (" +
                                            std::to_string(sup) + ")");
      }
      lo = me.q;
      while (t_of(lo) > target_threshold) {
        lo /= 2.0;
        if (lo < 1e-300) throw error(errc::unachievable, "no bracketing efficiency");
      }
      hi = me.q;
      while (t_of(hi) < target_threshold) {
        hi *= 2.0;
        if (hi > 1e300) throw error(errc::unachievable, "no bracketing efficiency");
      }
      break;
    }
    case Lever::cost_margin: {
      // T increases in l; m >= 0 caps l at a - g.
      const double l_max = market.a - me.g;
      if (!(l_max > 0)) throw error(errc::unachievable, "fixed cost g exhausts the price");
      if (target_threshold > t_of(l_max)) {
        throw error(errc::unachievable, "target exceeds threshold at zero access cost (" +
                                            std::to_string(t_of(l_max)) + ")");
      }
      hi = l_max;
      lo = l_max * 1e-12;
      while (t_of(lo) > target_threshold) {
        lo *= 1e-3;
        if (lo < 1e-300) throw error(errc::unachievable, "no bracketing margin");
      }
      break;
    }
  }

  return detail::bisect_monotone(t_of, lo, hi, target_threshold);
}

inline double equalize(const GameConfig& config, Lever lever, Side target,
                       double target_threshold) {
  return equalize(config.market, config.player(target), lever, target_threshold);
}

}  // namespace fishgame
