#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gamevalue/congestion.hpp"
#include "gamevalue/values.hpp"

namespace gamevalue {

/// SplitMix64 (Steele, Lea & Flood 2014), the documented PRNG of the search
/// pipeline: state advances by the 64-bit golden-gamma constant, the output
/// is the standard two-round xor-multiply finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return scramble(state_);
  }
  /// Draw below bound by modulo; the small grid sizes here make the bias
  /// irrelevant and the draw stays reproducible.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Iteration t draws from SplitMix64 seeded with scramble(seed ^ scramble(t+1)),
/// so iterations are independent substreams of the single 64-bit seed.
inline SplitMix64 iteration_rng(std::uint64_t seed, std::uint64_t iteration) {
  return SplitMix64(SplitMix64::scramble(seed ^ SplitMix64::scramble(iteration + 1)));
}

enum class SearchTarget { Mediation, Enforcement };

enum class SearchClass {
  General,        // strategic-form games with the given strategy counts
  CongestionS,    // simple congestion forms
  CongestionSN,   // ... with non-increasing facilities
  CongestionI,    // ... facility-symmetric
  CongestionIN,   // ... symmetric and non-increasing
};

struct SearchConfig {
  SearchClass game_class = SearchClass::General;
  std::vector<int> strategy_counts;  // General only
  int players = 0;                   // congestion classes
  int facilities = 0;
  bool linear = false;                    // congestion: force linear facilities
  bool exclude_strict_dominance = false;  // drop games where a player has a
                                          // strictly dominant strategy
  std::vector<Rational> grid;
  std::uint64_t seed = 0;
  long long iterations = 0;
  SearchTarget target = SearchTarget::Mediation;
  Rational threshold;
  bool allow_partial = false;  // permit MV estimates from incomplete v_N (n > 2)

  void validate() const {
    if (iterations < 1) throw DomainError("search needs at least one iteration");
    if (grid.empty()) throw DomainError("search needs a nonempty payoff grid");
    for (const auto& v : grid)
      if (v < 0) throw DomainError("payoff grid values must be nonnegative");
    if (game_class == SearchClass::General) {
      if (strategy_counts.empty())
        throw DomainError("general search needs per-player strategy counts");
      for (int m : strategy_counts)
        if (m < 1) throw DomainError("strategy counts must be positive");
      if (target == SearchTarget::Mediation && strategy_counts.size() != 2 && !allow_partial)
        throw DomainError(
            "mediation search over games with more than two players yields only "
            "estimates; pass allow_partial to accept them");
    } else {
      if (players < 1 || facilities < 1)
        throw DomainError("congestion search needs players >= 1 and facilities >= 1");
      if (target == SearchTarget::Mediation && players != 2 && !allow_partial)
        throw DomainError(
            "mediation search over congestion games with more than two players yields "
            "only estimates; pass allow_partial to accept them");
    }
  }
};

struct SearchResult {
  bool found = false;
  long long best_iteration = -1;
  ExtendedRational best_value;
  std::optional<Game> best_game;
  std::optional<CongestionForm> best_form;  // set for congestion classes
  ValueReport best_report;                  // full re-analysis of the winner
  bool threshold_met = false;
  long long evaluated = 0;
  long long filtered_dominance = 0;
  long long indeterminate = 0;
};

namespace detail {

inline Rational draw(const std::vector<Rational>& grid, SplitMix64& rng) {
  return grid[static_cast<std::size_t>(rng.below(grid.size()))];
}

inline Game sample_general(const SearchConfig& cfg, SplitMix64& rng) {
  std::size_t profiles = 1;
  for (int m : cfg.strategy_counts) profiles *= static_cast<std::size_t>(m);
  std::vector<std::vector<Rational>> layers(cfg.strategy_counts.size());
  for (auto& layer : layers) {
    layer.reserve(profiles);
    for (std::size_t s = 0; s < profiles; ++s) layer.push_back(draw(cfg.grid, rng));
  }
  return Game(cfg.strategy_counts, std::move(layers));
}

inline CongestionForm sample_form(const SearchConfig& cfg, SplitMix64& rng) {
  const int n = cfg.players, m = cfg.facilities;
  const bool symmetric =
      cfg.game_class == SearchClass::CongestionI || cfg.game_class == SearchClass::CongestionIN;
  const bool non_increasing =
      cfg.game_class == SearchClass::CongestionSN || cfg.game_class == SearchClass::CongestionIN;
  auto sample_column = [&]() {
    std::vector<Rational> col;
    if (cfg.linear) {
      // w(n) and the constant decrement d drawn from the grid, so the
      // column is linear and (d >= 0) non-increasing by construction.
      Rational wn = draw(cfg.grid, rng), d = draw(cfg.grid, rng);
      for (int k = 1; k <= n; ++k) col.push_back(wn + Rational(n - k) * d);
    } else {
      for (int k = 0; k < n; ++k) col.push_back(draw(cfg.grid, rng));
      if (non_increasing) std::sort(col.begin(), col.end(), std::greater<Rational>());
    }
    return col;
  };
  std::vector<std::vector<Rational>> table;
  if (symmetric) {
    auto col = sample_column();
    table.assign(static_cast<std::size_t>(m), col);
  } else {
    for (int j = 0; j < m; ++j) table.push_back(sample_column());
  }
  return CongestionForm(n, std::move(table));
}

inline bool any_strictly_dominant(const Game& g) {
  for (int i = 0; i < g.player_count(); ++i)
    if (has_strictly_dominant_strategy(g, i)) return true;
  return false;
}

}  // namespace detail

/// Seeded random scan for a game maximizing the mediation or enforcement
/// value within a class.  Deterministic for a fixed config: iteration t uses
/// its own SplitMix64 substream, the best instance is the earliest one
/// attaining the maximal target value, and the threshold is met only by a
/// strict exceedance.  Games whose mediation value is indeterminate (no
/// equilibrium found by an incomplete method) are counted and skipped.
inline SearchResult witness_search(const SearchConfig& cfg) {
  cfg.validate();
  SearchResult result;
  std::optional<CongestionForm> best_form;
  std::optional<Game> best_game;
  for (long long t = 0; t < cfg.iterations; ++t) {
    SplitMix64 rng = iteration_rng(cfg.seed, static_cast<std::uint64_t>(t));
    std::optional<CongestionForm> form;
    Game game = [&] {
      if (cfg.game_class == SearchClass::General) return detail::sample_general(cfg, rng);
      form = detail::sample_form(cfg, rng);
      return induce_game(*form);
    }();
    if (cfg.exclude_strict_dominance && detail::any_strictly_dominant(game)) {
      ++result.filtered_dominance;
      continue;
    }
    ++result.evaluated;

    ExtendedRational value;
    if (cfg.target == SearchTarget::Enforcement) {
      value = value_ratio(opt(game), max_surplus_ce(game).value);
    } else {
      Rational vc = max_surplus_ce(game).value;
      // Cheap upper bound first: v_N is at least the best pure-equilibrium
      // surplus, so v_C over that bound caps the mediation value.  A game
      // that cannot strictly beat the current best is skipped before the
      // expensive exact v_N.
      if (result.found) {
        Rational best_pure;
        bool has_pure = false;
        for (const auto& prof : pure_nash(game)) {
          Rational s = game.profile_surplus(game.index_of(prof));
          if (!has_pure || s > best_pure) {
            best_pure = s;
            has_pure = true;
          }
        }
        if (has_pure && !best_pure.is_zero() &&
            ExtendedRational(vc / best_pure) <= result.best_value)
          continue;
      }
      NashValue vn = nash_value(game);
      if (!vn.value) {
        ++result.indeterminate;
        continue;
      }
      value = value_ratio(vc, *vn.value);
    }

    if (!result.found || value > result.best_value) {
      result.found = true;
      result.best_iteration = t;
      result.best_value = value;
      best_game = std::move(game);
      best_form = std::move(form);
    }
  }
  if (result.found) {
    result.best_game = best_game;
    result.best_form = best_form;
    result.best_report = analyze(*best_game);
    result.threshold_met = result.best_value > ExtendedRational(cfg.threshold);
  }
  return result;
}

}  // namespace gamevalue
