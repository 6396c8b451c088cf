#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fishgame/bargaining.hpp"
#include "fishgame/errors.hpp"
#include "fishgame/game.hpp"
#include "fishgame/model.hpp"
#include "fishgame/viability.hpp"

namespace fishgame {

/// Joint-yield grid block of a scenario file.
struct GridSettings {
  double y_max = 0;
  std::size_t steps = 201;
};

/// A fully resolved scenario: game configuration plus analysis grid.
/// load_scenario() fills every default, so serialize/parse round-trips exactly.
struct Scenario {
  GameConfig config;
  GridSettings grid;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return it.key() == k;
        }) == allowed.end()) {
      throw error(errc::unknown_field, "unknown field '" + it.key() + "' in " + where);
    }
  }
}

inline double get_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw error(errc::parse_error, "missing field '" + std::string(key) + "' in " + where);
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw error(errc::parse_error,
                "field '" + std::string(key) + "' in " + where + " must be a number");
  }
  return v.get<double>();
}

}  // namespace detail

/// Parses and validates a scenario document. Unknown fields are rejected,
/// model violations are aggregated across both players, and absent solver and
/// grid blocks receive their defaults (tolerance 1e-6*(r/s), 500 iterations,
/// zero initial yields; 201 grid steps up to 1.05*max threshold).
inline Scenario load_scenario(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
  if (!doc.is_object()) throw error(errc::parse_error, "scenario must be a JSON object");

  detail::reject_unknown(doc, {"market", "stock", "players", "objective", "solver", "grid"},
                         "scenario");
  for (const char* req : {"market", "stock", "players", "objective"}) {
    if (!doc.contains(req)) {
      throw error(errc::parse_error, std::string("missing block '") + req + "'");
    }
  }

  Scenario sc;
  const json& market = doc.at("market");
  if (!market.is_object()) throw error(errc::parse_error, "'market' must be an object");
  detail::reject_unknown(market, {"a", "b"}, "market");
  sc.config.market.a = detail::get_number(market, "a", "market");
  sc.config.market.b = detail::get_number(market, "b", "market");

  const json& stock = doc.at("stock");
  if (!stock.is_object()) throw error(errc::parse_error, "'stock' must be an object");
  detail::reject_unknown(stock, {"r", "s"}, "stock");
  sc.config.market.r = detail::get_number(stock, "r", "stock");
  sc.config.market.s = detail::get_number(stock, "s", "stock");

  const json& players = doc.at("players");
  if (!players.is_array() || players.size() != 2) {
    throw error(errc::parse_error, "'players' must be an array of exactly 2 entries");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const json& pj = players[i];
    const std::string where = "players[" + std::to_string(i) + "]";
    if (!pj.is_object()) throw error(errc::parse_error, where + " must be an object");
    detail::reject_unknown(pj, {"id", "q", "g", "h", "m", "p", "k"}, where);
    PlayerParams& pl = i == 0 ? sc.config.player_a : sc.config.player_b;
    if (!pj.contains("id") || !pj.at("id").is_string() ||
        pj.at("id").get<std::string>().empty()) {
      throw error(errc::parse_error, where + " needs a non-empty string 'id'");
    }
    pl.id = pj.at("id").get<std::string>();
    pl.q = detail::get_number(pj, "q", where);
    pl.g = detail::get_number(pj, "g", where);
    pl.h = detail::get_number(pj, "h", where);
    pl.m = detail::get_number(pj, "m", where);
    pl.p = detail::get_number(pj, "p", where);
    pl.k = detail::get_number(pj, "k", where);
  }
  if (sc.config.player_a.id == sc.config.player_b.id) {
    throw error(errc::parse_error, "players must have distinct ids");
  }

  const json& obj = doc.at("objective");
  if (!obj.is_string() || (obj != "profit" && obj != "capacity")) {
    throw error(errc::parse_error, "'objective' must be \"profit\" or \"capacity\"");
  }
  sc.config.objective =
      obj == "profit" ? Objective::profit : Objective::capacity;

  sc.config.solver.tolerance = 0;  // filled below
  if (doc.contains("solver")) {
    const json& sj = doc.at("solver");
    if (!sj.is_object()) throw error(errc::parse_error, "'solver' must be an object");
    detail::reject_unknown(sj, {"tol", "max_iters", "init"}, "solver");
    if (sj.contains("tol")) sc.config.solver.tolerance = detail::get_number(sj, "tol", "solver");
    if (sj.contains("max_iters")) {
      const double mi = detail::get_number(sj, "max_iters", "solver");
      sc.config.solver.max_iterations = static_cast<int>(mi);
      if (sc.config.solver.max_iterations < 1 ||
          mi != static_cast<double>(sc.config.solver.max_iterations)) {
        throw error(errc::parse_error, "'max_iters' must be a positive integer");
      }
    }
    if (sj.contains("init")) {
      const json& init = sj.at("init");
      if (!init.is_array() || init.size() != 2 || !init[0].is_number() ||
          !init[1].is_number()) {
        throw error(errc::parse_error, "'init' must be [y_a, y_b]");
      }
      sc.config.solver.init_yield_a = init[0].get<double>();
      sc.config.solver.init_yield_b = init[1].get<double>();
      if (sc.config.solver.init_yield_a < 0 || sc.config.solver.init_yield_b < 0) {
        throw error(errc::parse_error, "'init' yields must be non-negative");
      }
    }
  }

  // Model validation, aggregated across both players.
  {
    std::vector<Issue> all;
    for (const PlayerParams* pl : {&sc.config.player_a, &sc.config.player_b}) {
      for (Issue is : validate(sc.config.market, *pl)) {
        is.message = "player " + pl->id + ": " + is.message;
        all.push_back(is);
      }
    }
    if (!all.empty()) {
      std::string msg;
      bool structural = false;
      for (const Issue& is : all) {
        if (!msg.empty()) msg += "; ";
        msg += std::string(errc_name(is.code)) + ": " + is.message;
        if (is.code != errc::meaningless_margin && is.code != errc::not_realistic)
          structural = true;
      }
      throw error(structural ? errc::validation_error : all.front().code, msg);
    }
  }

  if (sc.config.solver.tolerance == 0) {
    sc.config.solver.tolerance = 1e-6 * sc.config.market.r / sc.config.market.s;
  } else if (!(sc.config.solver.tolerance > 0)) {
    throw error(errc::parse_error, "'tol' must be positive");
  }

  sc.grid = GridSettings{};
  if (doc.contains("grid")) {
    const json& gj = doc.at("grid");
    if (!gj.is_object()) throw error(errc::parse_error, "'grid' must be an object");
    detail::reject_unknown(gj, {"y_max", "steps"}, "grid");
    if (gj.contains("y_max")) {
      sc.grid.y_max = detail::get_number(gj, "y_max", "grid");
      if (!(sc.grid.y_max > 0)) throw error(errc::parse_error, "'y_max' must be positive");
    }
    if (gj.contains("steps")) {
      const double st = detail::get_number(gj, "steps", "grid");
      sc.grid.steps = static_cast<std::size_t>(st);
      if (sc.grid.steps < 2 || st != static_cast<double>(sc.grid.steps)) {
        throw error(errc::parse_error, "'steps' must be an integer >= 2");
      }
    }
  }
  if (sc.grid.y_max == 0) {
    const double t_a = viability_threshold(sc.config.market, sc.config.player_a).threshold;
    const double t_b = viability_threshold(sc.config.market, sc.config.player_b).threshold;
    sc.grid.y_max = 1.05 * std::max(t_a, t_b);
  }
  return sc;
}

inline std::string serialize_scenario(const Scenario& sc) {
  using nlohmann::json;
  json doc;
  doc["market"] = {{"a", sc.config.market.a}, {"b", sc.config.market.b}};
  doc["stock"] = {{"r", sc.config.market.r}, {"s", sc.config.market.s}};
  json players = json::array();
  for (const PlayerParams* pl : {&sc.config.player_a, &sc.config.player_b}) {
    players.push_back({{"id", pl->id},
                       {"q", pl->q},
                       {"g", pl->g},
                       {"h", pl->h},
                       {"m", pl->m},
                       {"p", pl->p},
                       {"k", pl->k}});
  }
  doc["players"] = players;
  doc["objective"] = objective_name(sc.config.objective);
  doc["solver"] = {{"tol", sc.config.solver.tolerance},
                   {"max_iters", sc.config.solver.max_iterations},
                   {"init", {sc.config.solver.init_yield_a, sc.config.solver.init_yield_b}}};
  doc["grid"] = {{"y_max", sc.grid.y_max}, {"steps", sc.grid.steps}};
  return doc.dump(2) + "\n";
}

enum class SweepQuantity { threshold, equilibrium_yields, bargaining_empty };

inline const char* sweep_quantity_name(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::threshold: return "threshold";
    case SweepQuantity::equilibrium_yields: return "equilibrium_yields";
    case SweepQuantity::bargaining_empty: return "bargaining_empty";
  }
  return "?";
}

struct SweepSpec {
  std::string param_path;  ///< dotted, e.g. "players.A.q" or "market.a"
  double from = 0;
  double to = 0;
  std::size_t steps = 21;
  SweepQuantity quantity = SweepQuantity::threshold;
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

namespace detail {

inline void set_path(json& doc, const std::string& path, double value) {
  json* node = &doc;
  std::size_t pos = 0;
  std::string walked;
  while (true) {
    const std::size_t dot = path.find('.', pos);
    const std::string token = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (token.empty()) throw error(errc::path_error, "empty segment in '" + path + "'");
    walked = walked.empty() ? token : walked + "." + token;

    if (node->is_array()) {
      json* next = nullptr;
      for (json& el : *node) {
        if (el.is_object() && el.contains("id") && el.at("id") == token) {
          next = &el;
          break;
        }
      }
      if (next == nullptr) {
        throw error(errc::path_error, "no array element with id '" + token + "'");
      }
      node = next;
    } else if (node->is_object() && node->contains(token)) {
      node = &node->at(token);
    } else {
      throw error(errc::path_error, "'" + walked + "' does not resolve");
    }

    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (!node->is_number()) {
    throw error(errc::path_error, "'" + path + "' is not a numeric scalar");
  }
  *node = value;
}

}  // namespace detail

/// Re-evaluates the scenario over evenly spaced values of one parameter and
/// tabulates the requested quantity. Every point is re-validated; an invalid
/// point fails the sweep.
inline SweepTable sweep(const Scenario& base, const SweepSpec& spec) {
  if (!(spec.from < spec.to)) {
    throw error(errc::validation_error, "sweep requires from < to");
  }
  if (spec.steps < 2) throw error(errc::validation_error, "sweep requires steps >= 2");

  nlohmann::json doc = nlohmann::json::parse(serialize_scenario(base));
  // Resolve once up front so a bad path fails before any evaluation.
  detail::set_path(doc, spec.param_path, spec.from);

  SweepTable table;
  switch (spec.quantity) {
    case SweepQuantity::threshold:
      table.columns = {spec.param_path, "threshold_a", "threshold_b"};
      break;
    case SweepQuantity::equilibrium_yields:
      table.columns = {spec.param_path, "y_a", "y_b"};
      break;
    case SweepQuantity::bargaining_empty:
      table.columns = {spec.param_path, "bargaining_empty"};
      break;
  }

  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double value =
        spec.from + (spec.to - spec.from) * static_cast<double>(i) /
                        static_cast<double>(spec.steps - 1);
    detail::set_path(doc, spec.param_path, value);
    const Scenario point = load_scenario(doc.dump());

    std::vector<double> row{value};
    switch (spec.quantity) {
      case SweepQuantity::threshold: {
        row.push_back(viability_threshold(point.config.market, point.config.player_a).threshold);
        row.push_back(viability_threshold(point.config.market, point.config.player_b).threshold);
        break;
      }
      case SweepQuantity::equilibrium_yields: {
        const EquilibriumResult eq = solve_equilibrium(point.config);
        if (!eq.converged) {
          throw error(errc::non_convergence,
                      "no equilibrium at " + spec.param_path + " = " + std::to_string(value));
        }
        row.push_back(eq.strategy_a.yield);
        row.push_back(eq.strategy_b.yield);
        break;
      }
      case SweepQuantity::bargaining_empty: {
        const PayoffSurfaces sf =
            payoff_grid(point.config, BargainGrid{point.grid.y_max, point.grid.steps});
        const BargainingOutcome out =
            bargaining_set(point.config, sf, default_reference(point.config));
        row.push_back(out.empty ? 1.0 : 0.0);
        break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fishgame
