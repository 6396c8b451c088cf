#pragma once

#include <cmath>
#include <random>

#include "fishgame/fishgame.hpp"

namespace testutil {

using fishgame::GameConfig;
using fishgame::MarketStockParams;
using fishgame::Objective;
using fishgame::PlayerParams;

// Golden value for the reference parameter set: the viability quadratic scales
// to Y^2 - 1800 Y + 780000, whose smaller root is 900 - sqrt(30000).
inline constexpr double kReferenceThreshold = 726.7949192431123;

inline MarketStockParams reference_market() { return {10.0, 0.01, 1000.0, 1.0}; }

inline PlayerParams reference_player(const std::string& id = "A") {
  PlayerParams pl;
  pl.id = id;
  pl.q = 0.01;
  pl.g = 1.0;
  pl.h = 100.0;
  pl.m = 1.0;
  pl.p = 10.0;
  pl.k = 0.1;
  return pl;
}

inline GameConfig reference_config(Objective objective = Objective::profit) {
  GameConfig config;
  config.market = reference_market();
  config.player_a = reference_player("A");
  config.player_b = reference_player("B");
  config.objective = objective;
  return config;
}

struct ParamDraw {
  MarketStockParams market;
  PlayerParams player;
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

/// Random parameter set satisfying every validity requirement by
/// construction: positive parameters, margin l >= 0.2a, stock cost capped at
/// half of r*l, and a rate of return strictly inside the viable band.
inline ParamDraw random_valid_draw(std::mt19937_64& rng) {
  ParamDraw d;
  d.market.a = log_uniform(rng, 2.0, 50.0);
  d.player.id = "X";
  d.player.g = uniform(rng, 0.0, 0.4 * d.market.a);
  d.player.m = uniform(rng, 0.0, 0.4 * d.market.a);
  const double l = d.market.a - d.player.g - d.player.m;

  d.market.r = log_uniform(rng, 100.0, 10000.0);
  d.market.s = log_uniform(rng, 0.1, 10.0);
  const double natural_yield = d.market.r / d.market.s;
  d.market.b = l / (natural_yield * uniform(rng, 0.2, 5.0));

  d.player.q = log_uniform(rng, 1e-3, 1.0);
  d.player.h = uniform(rng, 0.0, 0.5 * d.market.r * l);
  d.player.p = log_uniform(rng, 0.1, 100.0);
  const double kp = uniform(rng, 0.1, 0.9) * d.player.q * (d.market.r * l - d.player.h);
  d.player.k = kp / d.player.p;
  return d;
}

/// h = 0, k = 0 parameter set with l/b on the requested side of r/s, where the
/// quadratic factors and T = min(l/b, r/s) exactly.
inline ParamDraw degenerate_draw(std::mt19937_64& rng, bool lb_below_rs) {
  ParamDraw d = random_valid_draw(rng);
  d.player.h = 0.0;
  d.player.k = 0.0;
  const double l = d.market.a - d.player.g - d.player.m;
  const double natural_yield = d.market.r / d.market.s;
  const double factor = lb_below_rs ? uniform(rng, 0.3, 0.9) : uniform(rng, 1.1, 3.0);
  d.market.b = l / (natural_yield * factor);
  return d;
}

}  // namespace testutil
