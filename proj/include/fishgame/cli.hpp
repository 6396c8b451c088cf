#pragma once

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fishgame/io.hpp"
#include "fishgame/scenario.hpp"

namespace fishgame {

/// Exit-code contract: 0 success, 2 scenario/usage problem, 3 non-viable
/// system, 4 non-convergence, 5 analysis not applicable to the scenario.
inline int exit_code_for(errc c) {
  switch (c) {
    case errc::parse_error:
    case errc::unknown_field:
    case errc::validation_error:
    case errc::non_positive_parameter:
    case errc::path_error:
      return 2;
    case errc::meaningless_margin:
    case errc::not_realistic:
    case errc::stock_depleted:
      return 3;
    case errc::non_convergence:
      return 4;
    case errc::not_applicable:
    case errc::degenerate_reference:
    case errc::unachievable:
    case errc::empty_input:
      return 5;
  }
  return 1;
}

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse_error, "cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::parse_error, "cannot write to '" + path + "'");
  out << content;
}

/// "<stem>_<suffix>.csv" next to the primary output path.
inline std::string derived_path(const std::string& out_path, const std::string& suffix) {
  const std::size_t dot = out_path.find_last_of('.');
  const std::size_t slash = out_path.find_last_of("/\\");
  const std::string stem =
      (dot != std::string::npos && (slash == std::string::npos || dot > slash))
          ? out_path.substr(0, dot)
          : out_path;
  return stem + "_" + suffix + ".csv";
}

inline Side side_for_id(const GameConfig& config, const std::string& id) {
  if (config.player_a.id == id) return Side::a;
  if (config.player_b.id == id) return Side::b;
  throw error(errc::validation_error, "no player with id '" + id + "'");
}

inline void emit(const std::string& content, const std::string& out_path,
                 std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file(out_path, content);
  }
}

}  // namespace cli_detail

/// Parses and runs one CLI invocation. Writes the primary artifact to --out
/// (or standard output) and secondary artifacts to their own paths.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Viability-constrained fishery duopoly toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sub->add_option("--out", out_path, "write the primary artifact to this path");
  };

  CLI::App* cmd_threshold =
      app.add_subcommand("threshold", "viability thresholds and sensitivities (JSON)");
  add_common(cmd_threshold);

  CLI::App* cmd_field =
      app.add_subcommand("field", "feasible-state raster for one player (CSV)");
  add_common(cmd_field);
  std::string field_player, field_kind = "profit";
  double field_rival = 0.0, field_y_max = 0.0, field_k_max = 0.0;
  std::size_t field_steps = 201;
  cmd_field->add_option("--player", field_player, "player id (default: first player)");
  cmd_field->add_option("--kind", field_kind, "yield|capacity|profit|rate_of_return")
      ->check(CLI::IsMember({"yield", "capacity", "profit", "rate_of_return"}));
  cmd_field->add_option("--rival-yield", field_rival, "fixed rival yield");
  cmd_field->add_option("--y-max", field_y_max, "yield axis bound (default: 1.05*T)");
  cmd_field->add_option("--k-max", field_k_max, "capacity axis bound (default: auto)");
  cmd_field->add_option("--grid-steps", field_steps, "lattice points per axis");

  CLI::App* cmd_equilibrium =
      app.add_subcommand("equilibrium", "best-response equilibrium (JSON + trace CSV)");
  add_common(cmd_equilibrium);
  std::string trace_out;
  cmd_equilibrium->add_option("--trace-out", trace_out, "trace CSV path");

  CLI::App* cmd_bargain =
      app.add_subcommand("bargain", "payoff surfaces, bargaining set, Pareto frontier");
  add_common(cmd_bargain);
  std::string reference = "auto", surfaces_out;
  double bargain_y_max = 0.0;
  std::size_t bargain_steps = 0, sharing_points = 11;
  cmd_bargain->add_option("--reference", reference, "equilibrium|threat|auto")
      ->check(CLI::IsMember({"equilibrium", "threat", "auto"}));
  cmd_bargain->add_option("--surfaces-out", surfaces_out, "payoff surfaces CSV path");
  cmd_bargain->add_option("--grid-steps", bargain_steps, "grid points per yield axis");
  cmd_bargain->add_option("--y-max", bargain_y_max, "yield axis bound");
  cmd_bargain->add_option("--sharing-points", sharing_points,
                          "points on the yield-sharing line when applicable");

  CLI::App* cmd_equalize =
      app.add_subcommand("equalize", "calibrate a lever to hit a target threshold (JSON)");
  add_common(cmd_equalize);
  std::string eq_player, eq_lever;
  double eq_target = 0.0;
  cmd_equalize->add_option("--player", eq_player, "player id")->required();
  cmd_equalize->add_option("--lever", eq_lever, "rate_of_return|efficiency|cost_margin")
      ->required()
      ->check(CLI::IsMember({"rate_of_return", "efficiency", "cost_margin"}));
  cmd_equalize->add_option("--target", eq_target, "target viability threshold")->required();

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "tabulate a quantity along one parameter (CSV)");
  add_common(cmd_sweep);
  SweepSpec sweep_spec;
  std::string sweep_quantity = "threshold";
  cmd_sweep->add_option("--param", sweep_spec.param_path, "dotted parameter path")->required();
  cmd_sweep->add_option("--from", sweep_spec.from, "first value")->required();
  cmd_sweep->add_option("--to", sweep_spec.to, "last value")->required();
  cmd_sweep->add_option("--steps", sweep_spec.steps, "number of points");
  cmd_sweep->add_option("--quantity", sweep_quantity,
                        "threshold|equilibrium_yields|bargaining_empty")
      ->check(CLI::IsMember({"threshold", "equilibrium_yields", "bargaining_empty"}));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const Scenario sc = load_scenario(cli_detail::read_file(scenario_path));
    const GameConfig& config = sc.config;

    if (cmd_threshold->parsed()) {
      cli_detail::emit(threshold_report_json(config).dump(2) + "\n", out_path, out);
      return 0;
    }

    if (cmd_field->parsed()) {
      const Side side = field_player.empty() ? Side::a
                                             : cli_detail::side_for_id(config, field_player);
      const PlayerParams& me = config.player(side);
      FieldKind kind = FieldKind::profit;
      if (field_kind == "yield") kind = FieldKind::yield;
      if (field_kind == "capacity") kind = FieldKind::capacity;
      if (field_kind == "rate_of_return") kind = FieldKind::rate_of_return;
      if (field_rival < 0) throw error(errc::validation_error, "--rival-yield must be >= 0");

      FieldGrid grid;
      grid.y_steps = grid.k_steps = field_steps;
      const double t_me = viability_threshold(config.market, me).threshold;
      grid.y_max = field_y_max > 0 ? field_y_max : 1.05 * std::max(t_me - field_rival, 0.0);
      if (!(grid.y_max > 0)) {
        throw error(errc::not_applicable, "rival yield leaves no viable yield range");
      }
      if (field_k_max > 0) {
        grid.k_max = field_k_max;
      } else {
        double k_hi = 0.0;
        for (std::size_t i = 0; i < grid.y_steps; ++i) {
          const double y = grid.y_max * static_cast<double>(i) /
                           static_cast<double>(grid.y_steps - 1);
          if (config.market.r - config.market.s * (y + field_rival) <= 0.0) continue;
          const FeasibleInterval iv = feasible_interval(config.market, me, y, field_rival);
          if (iv.empty()) continue;
          k_hi = std::max(k_hi, std::isfinite(iv.k_max) ? 1.1 * iv.k_max : 2.0 * iv.k_min);
        }
        grid.k_max = k_hi > 0 ? k_hi : 1.0;
      }
      cli_detail::emit(field_csv(feasible_field(config.market, me, grid, kind, field_rival)),
                       out_path, out);
      return 0;
    }

    if (cmd_equilibrium->parsed()) {
      const EquilibriumResult eq = solve_equilibrium(config);
      cli_detail::emit(equilibrium_json(config, eq).dump(2) + "\n", out_path, out);
      if (trace_out.empty() && !out_path.empty()) {
        trace_out = cli_detail::derived_path(out_path, "trace");
      }
      if (!trace_out.empty()) cli_detail::write_file(trace_out, trace_csv(eq));
      if (!eq.converged) {
        err << "equilibrium iteration did not converge within "
            << config.solver.max_iterations << " iterations\n";
        return 4;
      }
      return 0;
    }

    if (cmd_bargain->parsed()) {
      BargainGrid grid{bargain_y_max > 0 ? bargain_y_max : sc.grid.y_max,
                       bargain_steps >= 2 ? bargain_steps : sc.grid.steps};
      const PayoffSurfaces sf = payoff_grid(config, grid);
      ReferenceKind kind = default_reference(config);
      if (reference == "equilibrium") kind = ReferenceKind::equilibrium;
      if (reference == "threat") kind = ReferenceKind::threat;
      const BargainingOutcome outcome = bargaining_set(config, sf, kind);

      std::optional<std::vector<YieldSplit>> line;
      if (config.objective == Objective::capacity) {
        const double t_a = viability_threshold(config.market, config.player_a).threshold;
        const double t_b = viability_threshold(config.market, config.player_b).threshold;
        if (std::abs(t_a - t_b) <= config.equality_tolerance()) {
          line = yield_sharing_line(config, sharing_points);
        }
      }
      cli_detail::emit(
          bargain_json(config, outcome, line ? &*line : nullptr).dump(2) + "\n",
          out_path, out);
      if (surfaces_out.empty() && !out_path.empty()) {
        surfaces_out = cli_detail::derived_path(out_path, "surfaces");
      }
      if (!surfaces_out.empty()) cli_detail::write_file(surfaces_out, surfaces_csv(sf));
      return 0;
    }

    if (cmd_equalize->parsed()) {
      const Side side = cli_detail::side_for_id(config, eq_player);
      Lever lever = Lever::rate_of_return;
      if (eq_lever == "efficiency") lever = Lever::efficiency;
      if (eq_lever == "cost_margin") lever = Lever::cost_margin;
      const double value = equalize(config, lever, side, eq_target);
      cli_detail::emit(equalize_json(config, side, lever, eq_target, value).dump(2) + "\n",
                       out_path, out);
      return 0;
    }

    if (cmd_sweep->parsed()) {
      if (sweep_quantity == "equilibrium_yields")
        sweep_spec.quantity = SweepQuantity::equilibrium_yields;
      else if (sweep_quantity == "bargaining_empty")
        sweep_spec.quantity = SweepQuantity::bargaining_empty;
      else
        sweep_spec.quantity = SweepQuantity::threshold;
      cli_detail::emit(sweep_csv(sweep(sc, sweep_spec)), out_path, out);
      return 0;
    }
  } catch (const error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace fishgame
