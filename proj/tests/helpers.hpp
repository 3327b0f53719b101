#pragma once

// Shared fixtures and test-side oracles.  The oracles recompute quantities by
// direct enumeration, independent of the library code paths they check.

#include <vector>

#include "gamevalue/gamevalue.hpp"

namespace gvt {

using namespace gamevalue;

inline Game aumann() { return std::get<Game>(example("aumann")); }
inline Game gamma_x(const Rational& x) { return std::get<Game>(example("gamma_x", x)); }
inline Game pd(const Rational& x) { return std::get<Game>(example("pd", x)); }
inline CongestionForm example1() { return std::get<CongestionForm>(example("example1")); }
inline CongestionForm example2() { return std::get<CongestionForm>(example("example2")); }

// 3 players, unique pure equilibrium (1,0,0) with zero payoffs for everyone,
// while correlation can reach surplus 2 (found by seeded scan, frozen here).
inline Game zero_nash_positive_ce() {
  return Game({2, 2, 2}, {{0, 1, 0, 0, 0, 0, 2, 1},
                          {0, 0, 1, 2, 0, 2, 0, 0},
                          {1, 0, 0, 1, 0, 0, 0, 1}});
}

// ---- oracles -----------------------------------------------------------------

inline Rational oracle_deviation_gain(const Game& g, const CorrelatedStrategy& mu, int i,
                                      int rec, int dev) {
  Rational total;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    PureProfile s = g.profile_of(idx);
    if (s[static_cast<std::size_t>(i)] != rec) continue;
    Rational w = mu.weight(idx);
    if (w.is_zero()) continue;
    PureProfile t = s;
    t[static_cast<std::size_t>(i)] = dev;
    total += w * (g.payoff(i, t) - g.payoff(i, s));
  }
  return total;
}

inline bool oracle_is_ce(const Game& g, const CorrelatedStrategy& mu) {
  for (int i = 0; i < g.player_count(); ++i)
    for (int s = 0; s < g.strategies(i); ++s)
      for (int t = 0; t < g.strategies(i); ++t)
        if (t != s && oracle_deviation_gain(g, mu, i, s, t) > 0) return false;
  return true;
}

inline Rational oracle_opt(const Game& g) {
  Rational best;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    Rational s;
    for (int i = 0; i < g.player_count(); ++i) s += g.payoff(i, idx);
    if (idx == 0 || s > best) best = s;
  }
  return best;
}

inline Rational profile_probability(const Game& g, const MixedProfile& p, std::size_t idx) {
  PureProfile s = g.profile_of(idx);
  Rational w(1);
  for (int i = 0; i < g.player_count(); ++i)
    w *= p[static_cast<std::size_t>(i)][static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
  return w;
}

/// Nested expectation of the total payoff, computed directly from the mixed
/// profile without building a correlated strategy.
inline Rational oracle_mixed_surplus(const Game& g, const MixedProfile& p) {
  Rational total;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    Rational w = profile_probability(g, p, idx);
    if (w.is_zero()) continue;
    for (int i = 0; i < g.player_count(); ++i) total += w * g.payoff(i, idx);
  }
  return total;
}

inline Rational oracle_expected_payoff(const Game& g, const MixedProfile& p, int player) {
  Rational total;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    Rational w = profile_probability(g, p, idx);
    if (!w.is_zero()) total += w * g.payoff(player, idx);
  }
  return total;
}

/// Full enumeration of unilateral pure deviations.
inline Rational oracle_best_regret(const Game& g, const MixedProfile& p) {
  Rational best;
  for (int i = 0; i < g.player_count(); ++i) {
    Rational current = oracle_expected_payoff(g, p, i);
    for (int t = 0; t < g.strategies(i); ++t) {
      MixedProfile q = p;
      q[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(g.strategies(i)),
                                            Rational(0));
      q[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = Rational(1);
      Rational gain = oracle_expected_payoff(g, q, i) - current;
      if (gain > best) best = gain;
    }
  }
  return best;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

inline BigInt oracle_vector_profile_count(const CongestionForm& f, const CongestionVector& pi) {
  BigInt count = 1;
  int left = f.player_count();
  for (int j = 0; j < f.facility_count(); ++j) {
    count *= binomial(left, pi[static_cast<std::size_t>(j)]);
    left -= pi[static_cast<std::size_t>(j)];
  }
  return count;
}

// ---- seeded random fixtures ----------------------------------------------------

struct Rng {
  SplitMix64 rng;
  explicit Rng(std::uint64_t seed) : rng(seed) {}
  const Rational& pick(const std::vector<Rational>& grid) {
    return grid[static_cast<std::size_t>(rng.below(grid.size()))];
  }
  int below(int n) { return static_cast<int>(rng.below(static_cast<std::uint64_t>(n))); }
};

inline std::vector<Rational> default_grid() {
  return {0, 1, 2, 3, 4, 5, Rational(1, 2), Rational(3, 2), Rational(5, 2), 7};
}

inline Game random_game(Rng& r, const std::vector<int>& counts,
                        const std::vector<Rational>& grid) {
  std::size_t profiles = 1;
  for (int m : counts) profiles *= static_cast<std::size_t>(m);
  std::vector<std::vector<Rational>> layers(counts.size());
  for (auto& layer : layers)
    for (std::size_t s = 0; s < profiles; ++s) layer.push_back(r.pick(grid));
  return Game(counts, std::move(layers));
}

inline CorrelatedStrategy random_distribution(Rng& r, const Game& g) {
  // random nonnegative integer weights, normalized; at least one positive
  std::vector<long long> w(g.profile_count());
  long long total = 0;
  for (auto& x : w) {
    x = r.below(5);
    total += x;
  }
  if (total == 0) {
    w[static_cast<std::size_t>(r.below(static_cast<int>(g.profile_count())))] = 1;
    total = 1;
  }
  CorrelatedStrategy mu(g.strategy_counts());
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx)
    if (w[idx] > 0) mu.set(idx, Rational(BigInt(w[idx]), BigInt(total)));
  return mu;
}

inline MixedProfile random_mixed(Rng& r, const Game& g) {
  MixedProfile p(static_cast<std::size_t>(g.player_count()));
  for (int i = 0; i < g.player_count(); ++i) {
    std::vector<long long> w(static_cast<std::size_t>(g.strategies(i)));
    long long total = 0;
    for (auto& x : w) {
      x = r.below(4);
      total += x;
    }
    if (total == 0) {
      w[static_cast<std::size_t>(r.below(g.strategies(i)))] = 1;
      total = 1;
    }
    for (long long x : w)
      p[static_cast<std::size_t>(i)].push_back(Rational(BigInt(x), BigInt(total)));
  }
  return p;
}

inline CongestionForm random_form(Rng& r, int n, int m, const std::vector<Rational>& grid,
                                  bool non_increasing, bool symmetric) {
  auto column = [&] {
    std::vector<Rational> col;
    for (int k = 0; k < n; ++k) col.push_back(r.pick(grid));
    if (non_increasing) std::sort(col.begin(), col.end(), std::greater<Rational>());
    return col;
  };
  std::vector<std::vector<Rational>> table;
  if (symmetric) {
    auto c = column();
    table.assign(static_cast<std::size_t>(m), c);
  } else {
    for (int j = 0; j < m; ++j) table.push_back(column());
  }
  return CongestionForm(n, std::move(table));
}

inline CongestionForm random_linear_two_facility(Rng& r, int n,
                                                 const std::vector<Rational>& grid) {
  auto column = [&] {
    Rational wn = r.pick(grid), d = r.pick(grid);
    std::vector<Rational> col;
    for (int k = 1; k <= n; ++k) col.push_back(wn + Rational(n - k) * d);
    return col;
  };
  return CongestionForm(n, {column(), column()});
}

/// Symmetric non-increasing form whose v(k) = k w(k) is concave: take sorted
/// nonnegative increments for v and divide back.
inline CongestionForm random_concave_symmetric(Rng& r, int n, int m,
                                               const std::vector<Rational>& grid) {
  std::vector<Rational> deltas;
  for (int k = 0; k < n; ++k) deltas.push_back(r.pick(grid));
  std::sort(deltas.begin(), deltas.end(), std::greater<Rational>());
  std::vector<Rational> col;
  Rational acc;
  for (int k = 1; k <= n; ++k) {
    acc += deltas[static_cast<std::size_t>(k - 1)];
    col.push_back(acc / Rational(k));
  }
  return CongestionForm(n, std::vector<std::vector<Rational>>(static_cast<std::size_t>(m), col));
}

}  // namespace gvt
