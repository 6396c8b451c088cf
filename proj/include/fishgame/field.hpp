#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "fishgame/errors.hpp"
#include "fishgame/model.hpp"

namespace fishgame {

enum class FieldKind { yield, capacity, profit, rate_of_return };

inline const char* field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::yield: return "yield";
    case FieldKind::capacity: return "capacity";
    case FieldKind::profit: return "profit";
    case FieldKind::rate_of_return: return "rate_of_return";
  }
  return "?";
}

/// Yield x capacity lattice, both axes from 0 to the stated maximum inclusive.
struct FieldGrid {
  double y_max = 0;
  std::size_t y_steps = 201;
  double k_max = 0;
  std::size_t k_steps = 201;
};

/// Raster over the lattice; infeasible cells carry NaN and feasible = 0.
/// Cells are stored row-major: yield index outer, capacity index inner.
struct FieldRaster {
  std::vector<double> yields;
  std::vector<double> capacities;
  std::vector<double> values;
  std::vector<std::uint8_t> feasible;

  std::size_t index(std::size_t iy, std::size_t ik) const {
    return iy * capacities.size() + ik;
  }
};

/// Evaluates the selected variable over the lattice, masking every (Y, K)
/// outside the capacity interval of its yield column.
inline FieldRaster feasible_field(const MarketStockParams& market,
                                  const PlayerParams& me, const FieldGrid& grid,
                                  FieldKind kind, double y_rival = 0.0) {
  if (!(grid.y_max > 0.0) || !(grid.k_max > 0.0) || grid.y_steps < 2 || grid.k_steps < 2) {
    throw error(errc::non_positive_parameter, "field grid bounds must be positive");
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  FieldRaster raster;
  raster.yields.resize(grid.y_steps);
  raster.capacities.resize(grid.k_steps);
  for (std::size_t i = 0; i < grid.y_steps; ++i)
    raster.yields[i] = grid.y_max * static_cast<double>(i) / static_cast<double>(grid.y_steps - 1);
  for (std::size_t j = 0; j < grid.k_steps; ++j)
    raster.capacities[j] = grid.k_max * static_cast<double>(j) / static_cast<double>(grid.k_steps - 1);
  raster.values.assign(grid.y_steps * grid.k_steps, nan);
  raster.feasible.assign(grid.y_steps * grid.k_steps, 0);

  for (std::size_t i = 0; i < grid.y_steps; ++i) {
    const double y = raster.yields[i];
    if (market.r - market.s * (y + y_rival) <= 0.0) continue;  // stock gone, whole column infeasible
    const FeasibleInterval iv = feasible_interval(market, me, y, y_rival);
    if (iv.empty()) continue;
    const EndogenousState st = endogenous_state(market, me, y, y_rival);
    for (std::size_t j = 0; j < grid.k_steps; ++j) {
      const double cap = raster.capacities[j];
      if (cap < iv.k_min || cap > iv.k_max) continue;
      const std::size_t idx = raster.index(i, j);
      raster.feasible[idx] = 1;
      switch (kind) {
        case FieldKind::yield: raster.values[idx] = y; break;
        case FieldKind::capacity: raster.values[idx] = cap; break;
        case FieldKind::profit: raster.values[idx] = st.profit; break;
        case FieldKind::rate_of_return:
          raster.values[idx] = cap > 0.0 ? st.profit / (cap * me.p) : 0.0;
          break;
      }
    }
  }
  return raster;
}

}  // namespace fishgame
