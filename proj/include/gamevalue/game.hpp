#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gamevalue/errors.hpp"
#include "gamevalue/rational.hpp"

namespace gamevalue {

/// One pure strategy per player: choices[i] in [0, m_i).
using PureProfile = std::vector<int>;

/// One probability distribution per player, each summing to 1 exactly.
using MixedProfile = std::vector<std::vector<Rational>>;

/// Finite nonnegative strategic-form game.  Payoffs are stored densely,
/// player-major: payoff layer i is a flat tensor over pure profiles in
/// row-major order, the last player's index varying fastest, i.e.
///   index(s) = sum_i s[i] * stride[i],  stride[n-1] = 1,
///   stride[i] = stride[i+1] * m_{i+1}.
class Game {
 public:
  Game(std::vector<int> strategy_counts, std::vector<std::vector<Rational>> payoffs)
      : counts_(std::move(strategy_counts)), payoffs_(std::move(payoffs)) {
    if (counts_.empty()) throw DimensionError("game needs at least one player");
    for (int m : counts_)
      if (m < 1) throw DimensionError("every player needs at least one strategy");
    strides_.assign(counts_.size(), 1);
    for (std::size_t i = counts_.size() - 1; i > 0; --i)
      strides_[i - 1] = strides_[i] * static_cast<std::size_t>(counts_[i]);
    profile_count_ = strides_[0] * static_cast<std::size_t>(counts_[0]);
    if (payoffs_.size() != counts_.size())
      throw DimensionError("expected one payoff layer per player");
    for (std::size_t i = 0; i < payoffs_.size(); ++i) {
      if (payoffs_[i].size() != profile_count_)
        throw DimensionError("payoff layer for player " + std::to_string(i + 1) + " has " +
                             std::to_string(payoffs_[i].size()) + " entries, expected " +
                             std::to_string(profile_count_));
      for (std::size_t s = 0; s < profile_count_; ++s)
        if (payoffs_[i][s] < 0)
          throw NegativePayoffError("negative payoff " + payoffs_[i][s].str() + " for player " +
                                    std::to_string(i + 1) + ", profile index " +
                                    std::to_string(s));
    }
  }

  static Game from_function(std::vector<int> strategy_counts,
                            const std::function<Rational(int player, const PureProfile&)>& u) {
    Game tmp(strategy_counts, uniform_layers(strategy_counts));
    std::vector<std::vector<Rational>> layers(strategy_counts.size());
    for (std::size_t i = 0; i < strategy_counts.size(); ++i) {
      layers[i].resize(tmp.profile_count());
      for (std::size_t s = 0; s < tmp.profile_count(); ++s)
        layers[i][s] = u(static_cast<int>(i), tmp.profile_of(s));
    }
    return Game(std::move(strategy_counts), std::move(layers));
  }

  int player_count() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& strategy_counts() const { return counts_; }
  int strategies(int player) const { return counts_.at(static_cast<std::size_t>(player)); }
  std::size_t profile_count() const { return profile_count_; }

  std::size_t index_of(const PureProfile& s) const {
    if (s.size() != counts_.size()) throw DimensionError("profile length != player count");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= counts_[i]) throw DomainError("strategy index out of range");
      idx += static_cast<std::size_t>(s[i]) * strides_[i];
    }
    return idx;
  }
  PureProfile profile_of(std::size_t idx) const {
    PureProfile s(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      s[i] = static_cast<int>(idx / strides_[i]);
      idx %= strides_[i];
    }
    return s;
  }
  /// Index of the profile equal to s except player i plays t.
  std::size_t deviate_index(std::size_t idx, int i, int t_before, int t_after) const {
    return idx + (static_cast<std::size_t>(t_after) - static_cast<std::size_t>(t_before)) *
                     strides_[static_cast<std::size_t>(i)];
  }

  const Rational& payoff(int player, std::size_t profile_index) const {
    return payoffs_.at(static_cast<std::size_t>(player)).at(profile_index);
  }
  const Rational& payoff(int player, const PureProfile& s) const {
    return payoff(player, index_of(s));
  }
  Rational profile_surplus(std::size_t profile_index) const {
    Rational total;
    for (const auto& layer : payoffs_) total += layer[profile_index];
    return total;
  }

 private:
  static std::vector<std::vector<Rational>> uniform_layers(const std::vector<int>& counts) {
    std::size_t n = 1;
    for (int m : counts) {
      if (m < 1) throw DimensionError("every player needs at least one strategy");
      n *= static_cast<std::size_t>(m);
    }
    return std::vector<std::vector<Rational>>(counts.size(), std::vector<Rational>(n));
  }

  std::vector<int> counts_;
  std::vector<std::vector<Rational>> payoffs_;
  std::vector<std::size_t> strides_;
  std::size_t profile_count_ = 0;
};

/// Distribution over pure strategy profiles.  Only nonzero weights are
/// stored, keyed by profile index for a fixed shape (strategy counts).
class CorrelatedStrategy {
 public:
  explicit CorrelatedStrategy(std::vector<int> shape) : shape_(std::move(shape)) {}

  static CorrelatedStrategy point_mass(const Game& g, const PureProfile& s) {
    CorrelatedStrategy mu(g.strategy_counts());
    mu.set(g.index_of(s), Rational(1));
    return mu;
  }
  static CorrelatedStrategy uniform_over(const Game& g, const std::vector<PureProfile>& support) {
    if (support.empty()) throw DomainError("uniform distribution over empty support");
    CorrelatedStrategy mu(g.strategy_counts());
    Rational w(BigInt(1), BigInt(static_cast<long long>(support.size())));
    for (const auto& s : support) mu.add(g.index_of(s), w);
    return mu;
  }

  const std::vector<int>& shape() const { return shape_; }
  const std::map<std::size_t, Rational>& weights() const { return weights_; }

  void set(std::size_t profile_index, Rational w) {
    if (w < 0) throw DomainError("negative probability weight");
    if (w.is_zero())
      weights_.erase(profile_index);
    else
      weights_[profile_index] = std::move(w);
  }
  void add(std::size_t profile_index, const Rational& w) {
    Rational next = weight(profile_index) + w;
    set(profile_index, next);
  }
  Rational weight(std::size_t profile_index) const {
    auto it = weights_.find(profile_index);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  Rational total() const {
    Rational t;
    for (const auto& [_, w] : weights_) t += w;
    return t;
  }
  bool valid_for(const Game& g) const {
    return shape_ == g.strategy_counts() && total() == 1;
  }

  friend bool operator==(const CorrelatedStrategy& a, const CorrelatedStrategy& b) {
    return a.shape_ == b.shape_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<int> shape_;
  std::map<std::size_t, Rational> weights_;
};

inline void require_valid(const Game& g, const CorrelatedStrategy& mu) {
  if (mu.shape() != g.strategy_counts())
    throw DimensionError("correlated strategy shape does not match the game");
  if (mu.total() != 1) throw DomainError("correlated strategy weights must sum to 1");
}

inline void require_valid(const Game& g, const MixedProfile& p) {
  if (static_cast<int>(p.size()) != g.player_count())
    throw DimensionError("mixed profile needs one distribution per player");
  for (int i = 0; i < g.player_count(); ++i) {
    if (static_cast<int>(p[i].size()) != g.strategies(i))
      throw DimensionError("mixed distribution length mismatch for player " +
                           std::to_string(i + 1));
    Rational sum;
    for (const auto& w : p[i]) {
      if (w < 0) throw DomainError("negative probability in mixed profile");
      sum += w;
    }
    if (sum != 1) throw DomainError("mixed distribution must sum to 1");
  }
}

inline MixedProfile pure_as_mixed(const Game& g, const PureProfile& s) {
  MixedProfile p(g.player_count());
  for (int i = 0; i < g.player_count(); ++i) {
    p[i].assign(static_cast<std::size_t>(g.strategies(i)), Rational(0));
    p[i].at(static_cast<std::size_t>(s.at(static_cast<std::size_t>(i)))) = Rational(1);
  }
  return p;
}

/// Expected payoff of one player under a correlated strategy:
/// sum_s u^i(s) mu(s), exact.
inline Rational expected_payoff(const Game& g, const CorrelatedStrategy& mu, int player) {
  require_valid(g, mu);
  if (player < 0 || player >= g.player_count()) throw DomainError("player index out of range");
  Rational total;
  for (const auto& [idx, w] : mu.weights()) total += g.payoff(player, idx) * w;
  return total;
}

/// Expected sum of all players' payoffs under mu.
inline Rational surplus(const Game& g, const CorrelatedStrategy& mu) {
  require_valid(g, mu);
  Rational total;
  for (const auto& [idx, w] : mu.weights()) total += g.profile_surplus(idx) * w;
  return total;
}

/// The product measure mu_p(s) = prod_i p^i(s^i) of a mixed profile.
inline CorrelatedStrategy product_distribution(const Game& g, const MixedProfile& p) {
  require_valid(g, p);
  CorrelatedStrategy mu(g.strategy_counts());
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    PureProfile s = g.profile_of(idx);
    Rational w(1);
    for (int i = 0; i < g.player_count() && !w.is_zero(); ++i)
      w *= p[static_cast<std::size_t>(i)][static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
    if (!w.is_zero()) mu.set(idx, w);
  }
  return mu;
}

/// Maximal surplus over all distributions; attained at a pure profile.
inline Rational opt(const Game& g) {
  Rational best = g.profile_surplus(0);
  for (std::size_t idx = 1; idx < g.profile_count(); ++idx)
    best = std::max(best, g.profile_surplus(idx));
  return best;
}

enum class DominanceRelation { StrictlyDominates, WeaklyDominates, Equivalent, None };

/// Classifies strategy s against strategy t for one player: payoffs compared
/// over every opponent profile, exactly.
inline DominanceRelation dominance(const Game& g, int player, int s, int t) {
  if (player < 0 || player >= g.player_count()) throw DomainError("player index out of range");
  if (s < 0 || s >= g.strategies(player) || t < 0 || t >= g.strategies(player))
    throw DomainError("strategy index out of range");
  if (s == t) throw DomainError("dominance comparison needs two distinct strategies");
  bool any_less = false, any_equal = false, any_greater = false;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    PureProfile prof = g.profile_of(idx);
    if (prof[static_cast<std::size_t>(player)] != s) continue;
    std::size_t tidx = g.deviate_index(idx, player, s, t);
    const Rational& us = g.payoff(player, idx);
    const Rational& ut = g.payoff(player, tidx);
    if (us < ut)
      any_less = true;
    else if (us == ut)
      any_equal = true;
    else
      any_greater = true;
  }
  if (any_less) return DominanceRelation::None;
  if (!any_greater) return DominanceRelation::Equivalent;
  return any_equal ? DominanceRelation::WeaklyDominates : DominanceRelation::StrictlyDominates;
}

/// True iff some strategy of the player strictly dominates every other.
/// A single-strategy player qualifies vacuously.
inline bool has_strictly_dominant_strategy(const Game& g, int player) {
  if (player < 0 || player >= g.player_count()) throw DomainError("player index out of range");
  int m = g.strategies(player);
  if (m == 1) return true;
  for (int s = 0; s < m; ++s) {
    bool dominant = true;
    for (int t = 0; t < m && dominant; ++t)
      if (t != s && dominance(g, player, s, t) != DominanceRelation::StrictlyDominates)
        dominant = false;
    if (dominant) return true;
  }
  return false;
}

}  // namespace gamevalue
