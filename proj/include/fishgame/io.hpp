#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fishgame/bargaining.hpp"
#include "fishgame/field.hpp"
#include "fishgame/game.hpp"
#include "fishgame/scenario.hpp"
#include "fishgame/viability.hpp"

namespace fishgame {

/// 12 significant digits, locale-free; the CSV convention for every emitter.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string surfaces_csv(const PayoffSurfaces& sf) {
  std::string out = "y_a,y_b,feasible_a,feasible_b,payoff_a,payoff_b\n";
  for (std::size_t ia = 0; ia < sf.yields_a.size(); ++ia) {
    for (std::size_t ib = 0; ib < sf.yields_b.size(); ++ib) {
      const std::size_t idx = sf.index(ia, ib);
      out += format_number(sf.yields_a[ia]);
      out += ',';
      out += format_number(sf.yields_b[ib]);
      out += ',';
      out += sf.feasible_a[idx] ? '1' : '0';
      out += ',';
      out += sf.feasible_b[idx] ? '1' : '0';
      out += ',';
      out += format_number(sf.payoff_a[idx]);
      out += ',';
      out += format_number(sf.payoff_b[idx]);
      out += '\n';
    }
  }
  return out;
}

inline std::string trace_csv(const EquilibriumResult& eq) {
  std::string out = "iter,y_a,y_b\n";
  for (std::size_t i = 0; i < eq.trace.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_number(eq.trace[i][0]);
    out += ',';
    out += format_number(eq.trace[i][1]);
    out += '\n';
  }
  return out;
}

inline std::string field_csv(const FieldRaster& raster) {
  std::string out = "y,k,feasible,value\n";
  for (std::size_t iy = 0; iy < raster.yields.size(); ++iy) {
    for (std::size_t ik = 0; ik < raster.capacities.size(); ++ik) {
      const std::size_t idx = raster.index(iy, ik);
      out += format_number(raster.yields[iy]);
      out += ',';
      out += format_number(raster.capacities[ik]);
      out += ',';
      out += raster.feasible[idx] ? '1' : '0';
      out += ',';
      out += format_number(raster.values[idx]);
      out += '\n';
    }
  }
  return out;
}

inline std::string sweep_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const std::vector<double>& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json strategy_json(const Strategy& st) {
  return {{"yield", st.yield},
          {"capacity", st.capacity},
          {"payoff", st.payoff},
          {"alive", st.alive}};
}

/// Per-player quadratic, roots, threshold and sensitivities.
inline nlohmann::json threshold_report_json(const GameConfig& config) {
  nlohmann::json players = nlohmann::json::array();
  for (Side side : {Side::a, Side::b}) {
    const PlayerParams& pl = config.player(side);
    const ViabilityResult res = viability_threshold(config.market, pl);
    const Sensitivities sens = threshold_sensitivities(config.market, pl);
    players.push_back({{"id", pl.id},
                       {"quad_a", res.quad_a},
                       {"quad_b", res.quad_b},
                       {"quad_c", res.quad_c},
                       {"delta", res.delta},
                       {"t1", res.t1},
                       {"t2", res.t2},
                       {"threshold", res.threshold},
                       {"valid", res.valid},
                       {"sensitivities",
                        {{"dT_dq", sens.dT_dq},
                         {"dT_dk", sens.dT_dk},
                         {"dT_dl", sens.dT_dl}}}});
  }
  return {{"players", players}};
}

inline nlohmann::json equilibrium_json(const GameConfig& config,
                                       const EquilibriumResult& eq) {
  nlohmann::json j{{"objective", objective_name(config.objective)},
                   {"converged", eq.converged},
                   {"degenerate_continuum", eq.degenerate_continuum},
                   {"iterations", eq.iterations},
                   {"strategy_a", strategy_json(eq.strategy_a)},
                   {"strategy_b", strategy_json(eq.strategy_b)}};
  if (eq.excluded) {
    j["excluded"] = config.player(*eq.excluded).id;
  } else {
    j["excluded"] = nullptr;
  }
  return j;
}

inline nlohmann::json pareto_json(const std::vector<ParetoPoint>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ParetoPoint& p : pts) {
    arr.push_back({{"y_a", p.y_a},
                   {"y_b", p.y_b},
                   {"payoff_a", p.payoff_a},
                   {"payoff_b", p.payoff_b}});
  }
  return arr;
}

inline nlohmann::json bargain_json(const GameConfig& config,
                                   const BargainingOutcome& outcome,
                                   const std::vector<YieldSplit>* sharing_line) {
  nlohmann::json j{{"objective", objective_name(config.objective)},
                   {"reference_kind", reference_kind_name(outcome.reference_kind)},
                   {"reference", {{"a", outcome.reference_a}, {"b", outcome.reference_b}}},
                   {"empty", outcome.empty},
                   {"member_count", outcome.member_count},
                   {"pareto", pareto_json(outcome.pareto)}};
  if (!outcome.note.empty()) j["note"] = outcome.note;
  if (sharing_line != nullptr) {
    nlohmann::json line = nlohmann::json::array();
    for (const YieldSplit& sp : *sharing_line) {
      line.push_back({{"y_a", sp.y_a},
                      {"y_b", sp.y_b},
                      {"capacity_a", sp.capacity_a},
                      {"capacity_b", sp.capacity_b}});
    }
    j["sharing_line"] = line;
  }
  return j;
}

inline nlohmann::json equalize_json(const GameConfig& config, Side side, Lever lever,
                                    double target, double value) {
  const PlayerParams after =
      apply_lever(config.market, config.player(side), lever, value);
  const double achieved = viability_threshold(config.market, after).threshold;
  nlohmann::json j{{"player", config.player(side).id},
                   {"lever", lever_name(lever)},
                   {"value", value},
                   {"target_threshold", target},
                   {"achieved_threshold", achieved},
                   {"player_after",
                    {{"id", after.id},
                     {"q", after.q},
                     {"g", after.g},
                     {"h", after.h},
                     {"m", after.m},
                     {"p", after.p},
                     {"k", after.k}}}};
  return j;
}

}  // namespace fishgame
