#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fishgame/errors.hpp"

namespace fishgame {

/// Market and stock parameters shared by every fishing system on the same
/// resource: unit price P = a - b*Ytot, stock biomass S = r - s*Ytot.
struct MarketStockParams {
  double a = 0;  ///< maximum unit price
  double b = 0;  ///< price decrease per unit of total yield
  double r = 0;  ///< unfished biomass
  double s = 0;  ///< biomass decrease per unit of total yield
};

/// Per-system technology, cost and finance parameters.
struct PlayerParams {
  std::string id;
  double q = 0;  ///< fishing efficiency (yield per unit effort per unit biomass)
  double g = 0;  ///< fixed unit fishing cost
  double h = 0;  ///< stock-dependent cost coefficient, unit cost f = g + h/S
  double m = 0;  ///< unit market-access cost
  double p = 0;  ///< price of one capacity unit
  double k = 0;  ///< imperative rate of return on capacity value
};

/// Price/cost margin l = a - g - m. Systems with l <= 0 can never profit.
inline double cost_margin(const MarketStockParams& market, const PlayerParams& me) {
  return market.a - me.g - me.m;
}

/// Variables induced by the yield pair: stock, price, unit cost, effort, profit.
struct EndogenousState {
  double stock = 0;
  double price = 0;
  double unit_cost = 0;
  double effort = 0;
  double profit = 0;
};

inline EndogenousState endogenous_state(const MarketStockParams& market,
                                        const PlayerParams& me,
                                        double y_own, double y_rival) {
  const double total = y_own + y_rival;
  const double stock = market.r - market.s * total;
  if (stock <= 0.0) {
    throw error(errc::stock_depleted,
                "total yield " + std::to_string(total) + " leaves no stock");
  }
  EndogenousState st;
  st.stock = stock;
  st.price = market.a - market.b * total;
  st.unit_cost = me.g + me.h / stock;
  st.effort = y_own / (me.q * stock);
  st.profit = y_own * (st.price - st.unit_cost - me.m);
  return st;
}

/// Capacity interval [k_min, k_max] admissible for a given yield pair:
/// k_min is the effort bound Y/(qS), k_max the finance bound I/(pk).
struct FeasibleInterval {
  double k_min = 0;
  double k_max = 0;

  bool empty() const { return k_min > k_max; }
};

inline FeasibleInterval feasible_interval(const MarketStockParams& market,
                                          const PlayerParams& me,
                                          double y_own, double y_rival) {
  FeasibleInterval iv;
  if (y_own == 0.0) {
    // Dead/idle state stays representable: zero effort needs zero capacity.
    if (market.r - market.s * y_rival <= 0.0) {
      throw error(errc::stock_depleted, "rival yield leaves no stock");
    }
    return iv;
  }
  const EndogenousState st = endogenous_state(market, me, y_own, y_rival);
  iv.k_min = st.effort;
  if (me.k == 0.0) {
    // No finance imperative: only I >= 0 remains, as in conventional models.
    constexpr double inf = std::numeric_limits<double>::infinity();
    iv.k_max = st.profit >= 0.0 ? inf : -inf;
  } else {
    iv.k_max = st.profit / (me.p * me.k);
  }
  return iv;
}

namespace detail {

inline void check_positive(std::vector<Issue>& issues, double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    issues.push_back({errc::non_positive_parameter,
                      std::string(name) + " must be positive and finite"});
  }
}

inline void check_non_negative(std::vector<Issue>& issues, double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    issues.push_back({errc::non_positive_parameter,
                      std::string(name) + " must be non-negative and finite"});
  }
}

}  // namespace detail

}  // namespace fishgame
