#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fishgame/errors.hpp"
#include "fishgame/game.hpp"
#include "fishgame/model.hpp"
#include "fishgame/viability.hpp"

namespace fishgame {

/// Joint-yield grid; y_max <= 0 selects 1.05 * max(T_A, T_B).
struct BargainGrid {
  double y_max = 0;
  std::size_t steps = 201;
};

/// Payoffs of both players over the (y_a, y_b) lattice. Infeasible cells hold
/// payoff 0 for the infeasible player; beyond r/s both players are infeasible.
/// Row-major: index = ia * yields_b.size() + ib.
struct PayoffSurfaces {
  std::vector<double> yields_a;
  std::vector<double> yields_b;
  std::vector<double> payoff_a;
  std::vector<double> payoff_b;
  std::vector<std::uint8_t> feasible_a;
  std::vector<std::uint8_t> feasible_b;

  std::size_t index(std::size_t ia, std::size_t ib) const {
    return ia * yields_b.size() + ib;
  }
};

inline double resolve_grid_y_max(const GameConfig& config, const BargainGrid& grid) {
  if (grid.y_max > 0) return grid.y_max;
  const double t_a = viability_threshold(config.market, config.player_a).threshold;
  const double t_b = viability_threshold(config.market, config.player_b).threshold;
  return 1.05 * std::max(t_a, t_b);
}

/// Evaluates both players' payoffs on the joint yield grid. A player's payoff
/// is its profit (profit objective) or its full-utilization capacity Y/(qS)
/// (capacity objective) whenever its capacity interval at that cell is
/// non-empty, and 0 otherwise.
inline PayoffSurfaces payoff_grid(const GameConfig& config, BargainGrid grid = {}) {
  require_valid(config);
  if (grid.steps < 2) {
    throw error(errc::non_positive_parameter, "grid needs at least 2 steps");
  }
  const double y_max = resolve_grid_y_max(config, grid);

  PayoffSurfaces sf;
  sf.yields_a.resize(grid.steps);
  sf.yields_b.resize(grid.steps);
  for (std::size_t i = 0; i < grid.steps; ++i) {
    const double y = y_max * static_cast<double>(i) / static_cast<double>(grid.steps - 1);
    sf.yields_a[i] = y;
    sf.yields_b[i] = y;
  }
  const std::size_t n = grid.steps * grid.steps;
  sf.payoff_a.assign(n, 0.0);
  sf.payoff_b.assign(n, 0.0);
  sf.feasible_a.assign(n, 0);
  sf.feasible_b.assign(n, 0);

  // Player feasibility on the surface depends on the total yield alone: the
  // own yield cancels from the interval condition, and the idle edge y_own = 0
  // inherits the same rule (Y beyond the threshold blanks the whole line).
  auto fill = [&](const PlayerParams& me, double y_own, double y_rival,
                  double& payoff, std::uint8_t& ok) {
    const EndogenousState st = endogenous_state(config.market, me, y_own, y_rival);
    const double margin = st.price - st.unit_cost - me.m;
    const bool viable = me.k == 0.0 ? margin >= 0.0
                                    : me.q * st.stock * margin >= me.k * me.p;
    if (!viable) return;
    ok = 1;
    payoff = config.objective == Objective::capacity ? st.effort : st.profit;
  };

  for (std::size_t ia = 0; ia < grid.steps; ++ia) {
    for (std::size_t ib = 0; ib < grid.steps; ++ib) {
      const double y_a = sf.yields_a[ia];
      const double y_b = sf.yields_b[ib];
      if (config.market.r - config.market.s * (y_a + y_b) <= 0.0) continue;
      const std::size_t idx = sf.index(ia, ib);
      fill(config.player_a, y_a, y_b, sf.payoff_a[idx], sf.feasible_a[idx]);
      fill(config.player_b, y_b, y_a, sf.payoff_b[idx], sf.feasible_b[idx]);
    }
  }
  return sf;
}

/// Disagreement payoffs: each player best-responds while the rival plays its
/// own maximal viable yield. Under capacity maximization a rival whose
/// threshold reaches the player's own (within tolerance) forces the value to
/// exactly zero.
inline std::pair<double, double> threat_values(const GameConfig& config) {
  require_valid(config);
  const double t_a = viability_threshold(config.market, config.player_a).threshold;
  const double t_b = viability_threshold(config.market, config.player_b).threshold;
  const double eq_tol = config.equality_tolerance();

  auto one = [&](Side side, double own_t, double rival_t) -> double {
    if (config.objective == Objective::capacity && rival_t >= own_t - eq_tol) return 0.0;
    const Strategy st = best_response(config, side, rival_t);
    return st.alive ? st.payoff : 0.0;
  };
  return {one(Side::a, t_a, t_b), one(Side::b, t_b, t_a)};
}

enum class ReferenceKind { equilibrium, threat };

inline const char* reference_kind_name(ReferenceKind k) {
  return k == ReferenceKind::equilibrium ? "equilibrium" : "threat";
}

/// Reference policy: the equilibrium point, except for capacity games with
/// equal thresholds where the equilibrium is a continuum and the threat point
/// is the usable reference.
inline ReferenceKind default_reference(const GameConfig& config) {
  if (config.objective == Objective::capacity) {
    const double t_a = viability_threshold(config.market, config.player_a).threshold;
    const double t_b = viability_threshold(config.market, config.player_b).threshold;
    if (std::abs(t_a - t_b) <= config.equality_tolerance()) return ReferenceKind::threat;
  }
  return ReferenceKind::equilibrium;
}

struct ParetoPoint {
  double y_a = 0;
  double y_b = 0;
  double payoff_a = 0;
  double payoff_b = 0;
};

/// Maximal elements of the membership cells under the componentwise payoff
/// order, returned in ascending y_a order. Exact dominance: a cell is dropped
/// only if another member is at least as good in both payoffs and strictly
/// better in one.
inline std::vector<ParetoPoint> pareto_frontier(const PayoffSurfaces& surfaces,
                                                const std::vector<std::uint8_t>& membership) {
  std::vector<ParetoPoint> pts;
  for (std::size_t ia = 0; ia < surfaces.yields_a.size(); ++ia) {
    for (std::size_t ib = 0; ib < surfaces.yields_b.size(); ++ib) {
      const std::size_t idx = surfaces.index(ia, ib);
      if (!membership[idx]) continue;
      pts.push_back({surfaces.yields_a[ia], surfaces.yields_b[ib],
                     surfaces.payoff_a[idx], surfaces.payoff_b[idx]});
    }
  }
  if (pts.empty()) throw error(errc::empty_input, "membership mask is empty");

  std::sort(pts.begin(), pts.end(), [](const ParetoPoint& x, const ParetoPoint& y) {
    if (x.payoff_a != y.payoff_a) return x.payoff_a > y.payoff_a;
    return x.payoff_b > y.payoff_b;
  });

  std::vector<ParetoPoint> frontier;
  double best_pb = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j < pts.size() && pts[j].payoff_a == pts[i].payoff_a) ++j;
    const double group_max_pb = pts[i].payoff_b;  // groups are sorted by payoff_b
    if (group_max_pb > best_pb) {
      for (std::size_t t = i; t < j && pts[t].payoff_b == group_max_pb; ++t)
        frontier.push_back(pts[t]);
      best_pb = group_max_pb;
    }
    i = j;
  }

  std::sort(frontier.begin(), frontier.end(), [](const ParetoPoint& x, const ParetoPoint& y) {
    if (x.y_a != y.y_a) return x.y_a < y.y_a;
    return x.y_b < y.y_b;
  });
  return frontier;
}

struct BargainingOutcome {
  ReferenceKind reference_kind = ReferenceKind::equilibrium;
  double reference_a = 0;
  double reference_b = 0;
  std::vector<std::uint8_t> membership;  ///< same layout as the surfaces
  std::size_t member_count = 0;
  std::vector<ParetoPoint> pareto;
  bool empty = true;
  std::string note;
};

/// Cells where both players strictly beat the reference payoffs, plus the
/// Pareto frontier of that set.
inline BargainingOutcome bargaining_set(const GameConfig& config,
                                        const PayoffSurfaces& surfaces,
                                        ReferenceKind kind) {
  require_valid(config);
  BargainingOutcome out;
  out.reference_kind = kind;

  if (kind == ReferenceKind::equilibrium) {
    const double t_a = viability_threshold(config.market, config.player_a).threshold;
    const double t_b = viability_threshold(config.market, config.player_b).threshold;
    if (config.objective == Objective::capacity &&
        std::abs(t_a - t_b) <= config.equality_tolerance()) {
      throw error(errc::degenerate_reference,
                  "equal-threshold capacity game has an equilibrium continuum; "
                  "use the threat reference or fix a split");
    }
    const EquilibriumResult eq = solve_equilibrium(config);
    if (!eq.converged) {
      throw error(errc::non_convergence, "no equilibrium reference available");
    }
    out.reference_a = eq.strategy_a.payoff;
    out.reference_b = eq.strategy_b.payoff;
  } else {
    const auto [ta, tb] = threat_values(config);
    out.reference_a = ta;
    out.reference_b = tb;
    if (config.objective == Objective::capacity && ta == 0.0 && tb == 0.0) {
      out.note =
          "set taken relative to the zero threat point: every cell where both "
          "capacities are strictly positive qualifies; zero-payoff cells tie "
          "the reference and stay out";
    }
  }

  const std::size_t n = surfaces.payoff_a.size();
  out.membership.assign(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (surfaces.payoff_a[idx] > out.reference_a &&
        surfaces.payoff_b[idx] > out.reference_b) {
      out.membership[idx] = 1;
      ++out.member_count;
    }
  }
  out.empty = out.member_count == 0;
  if (!out.empty) out.pareto = pareto_frontier(surfaces, out.membership);
  return out;
}

/// One split of the common threshold total in a capacity game.
struct YieldSplit {
  double y_a = 0;
  double y_b = 0;
  double capacity_a = 0;
  double capacity_b = 0;
};

/// Evenly spaced splits (y_a, T - y_a) of the common threshold T, each
/// annotated with both players' full-utilization capacities. Only applies to
/// capacity games with equal thresholds, where every split is stationary.
inline std::vector<YieldSplit> yield_sharing_line(const GameConfig& config,
                                                  std::size_t n_points) {
  require_valid(config);
  if (n_points < 2) {
    throw error(errc::non_positive_parameter, "need at least 2 points");
  }
  const double t_a = viability_threshold(config.market, config.player_a).threshold;
  const double t_b = viability_threshold(config.market, config.player_b).threshold;
  if (config.objective != Objective::capacity) {
    throw error(errc::not_applicable, "sharing line applies to capacity games");
  }
  if (std::abs(t_a - t_b) > config.equality_tolerance()) {
    throw error(errc::not_applicable,
                "thresholds differ (" + std::to_string(t_a) + " vs " +
                    std::to_string(t_b) + "); no common total to share");
  }
  const double total = 0.5 * (t_a + t_b);
  const double stock = config.market.r - config.market.s * total;

  std::vector<YieldSplit> line(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    YieldSplit& sp = line[i];
    sp.y_a = total * static_cast<double>(i) / static_cast<double>(n_points - 1);
    sp.y_b = total - sp.y_a;
    sp.capacity_a = sp.y_a / (config.player_a.q * stock);
    sp.capacity_b = sp.y_b / (config.player_b.q * stock);
  }
  return line;
}

}  // namespace fishgame
