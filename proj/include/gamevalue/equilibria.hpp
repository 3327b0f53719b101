#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gamevalue/game.hpp"
#include "gamevalue/linear_program.hpp"

namespace gamevalue {

/// Deviation gains, one per (player, recommended strategy, deviation):
///   entry(i, s, t) = sum_{s^-i} mu(s^-i, s) [u^i(s^-i, t) - u^i(s^-i, s)].
/// mu is a correlated equilibrium iff every entry is <= 0.
class RegretTable {
 public:
  explicit RegretTable(const std::vector<int>& strategy_counts) : counts_(strategy_counts) {
    offsets_.reserve(counts_.size());
    std::size_t total = 0;
    for (int m : counts_) {
      offsets_.push_back(total);
      total += static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    }
    entries_.assign(total, Rational(0));
  }

  const Rational& entry(int player, int recommended, int deviation) const {
    return entries_[slot(player, recommended, deviation)];
  }
  Rational& entry(int player, int recommended, int deviation) {
    return entries_[slot(player, recommended, deviation)];
  }

  Rational max_entry() const {
    Rational best;  // 0; every table has at least the implicit stay-put gain 0
    bool first = true;
    for (std::size_t i = 0; i < counts_.size(); ++i)
      for (int s = 0; s < counts_[i]; ++s)
        for (int t = 0; t < counts_[i]; ++t) {
          if (t == s) continue;
          const Rational& e = entry(static_cast<int>(i), s, t);
          if (first || e > best) {
            best = e;
            first = false;
          }
        }
    return best;
  }

  const std::vector<int>& strategy_counts() const { return counts_; }

 private:
  std::size_t slot(int player, int recommended, int deviation) const {
    if (player < 0 || player >= static_cast<int>(counts_.size()))
      throw DomainError("player index out of range");
    int m = counts_[static_cast<std::size_t>(player)];
    if (recommended < 0 || recommended >= m || deviation < 0 || deviation >= m)
      throw DomainError("strategy index out of range");
    if (recommended == deviation) throw DomainError("deviation equals recommendation");
    return offsets_[static_cast<std::size_t>(player)] +
           static_cast<std::size_t>(recommended) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(deviation);
  }

  std::vector<int> counts_;
  std::vector<std::size_t> offsets_;
  std::vector<Rational> entries_;
};

inline RegretTable regret_table(const Game& g, const CorrelatedStrategy& mu) {
  require_valid(g, mu);
  RegretTable table(g.strategy_counts());
  for (const auto& [idx, w] : mu.weights()) {
    PureProfile prof = g.profile_of(idx);
    for (int i = 0; i < g.player_count(); ++i) {
      int s = prof[static_cast<std::size_t>(i)];
      const Rational& here = g.payoff(i, idx);
      for (int t = 0; t < g.strategies(i); ++t) {
        if (t == s) continue;
        table.entry(i, s, t) += w * (g.payoff(i, g.deviate_index(idx, i, s, t)) - here);
      }
    }
  }
  return table;
}

inline bool is_correlated_equilibrium(const Game& g, const CorrelatedStrategy& mu) {
  return regret_table(g, mu).max_entry() <= 0;
}

/// Feasible point of the dual of the max-surplus CE program: multipliers
/// alpha(i, s, t) >= 0 (one per incentive constraint) and a scalar beta with
///   sum_i sum_{t != s^i} alpha(i, s^i, t) [u^i(t, s^-i) - u^i(s)] + beta >= u(s)
/// for every pure profile s.  Any feasible beta upper-bounds v_C.
class DualCertificate {
 public:
  explicit DualCertificate(const std::vector<int>& strategy_counts)
      : alpha_(strategy_counts) {}

  const Rational& alpha(int player, int recommended, int deviation) const {
    return alpha_.entry(player, recommended, deviation);
  }
  Rational& alpha(int player, int recommended, int deviation) {
    return alpha_.entry(player, recommended, deviation);
  }
  const std::vector<int>& strategy_counts() const { return alpha_.strategy_counts(); }

  Rational beta;

 private:
  RegretTable alpha_;  // same (player, recommended, deviation) indexing
};

/// Exact check of every dual constraint; independent of the LP solver.
inline bool verify_dual_certificate(const Game& g, const DualCertificate& cert) {
  if (cert.strategy_counts() != g.strategy_counts())
    throw DimensionError("certificate index sets do not match the game");
  for (int i = 0; i < g.player_count(); ++i)
    for (int s = 0; s < g.strategies(i); ++s)
      for (int t = 0; t < g.strategies(i); ++t)
        if (t != s && cert.alpha(i, s, t) < 0) return false;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    PureProfile prof = g.profile_of(idx);
    Rational lhs = cert.beta;
    for (int i = 0; i < g.player_count(); ++i) {
      int s = prof[static_cast<std::size_t>(i)];
      for (int t = 0; t < g.strategies(i); ++t) {
        if (t == s) continue;
        lhs += cert.alpha(i, s, t) *
               (g.payoff(i, g.deviate_index(idx, i, s, t)) - g.payoff(i, idx));
      }
    }
    if (lhs < g.profile_surplus(idx)) return false;
  }
  return true;
}

struct CeSolution {
  Rational value;  // v_C
  CorrelatedStrategy mu;
  DualCertificate certificate;
};

/// Builds the max-surplus CE linear program over one variable per pure
/// profile and solves it exactly.  Row order: incentive rows lexicographic in
/// (player, recommended, deviation), then the normalization row; the dual
/// values in that order populate the certificate, whose beta equals v_C.
inline LinearProgram max_surplus_ce_lp(const Game& g) {
  LinearProgram lp;
  lp.variable_count = g.profile_count();
  lp.objective.resize(lp.variable_count);
  for (std::size_t idx = 0; idx < lp.variable_count; ++idx)
    lp.objective[idx] = g.profile_surplus(idx);
  for (int i = 0; i < g.player_count(); ++i)
    for (int s = 0; s < g.strategies(i); ++s)
      for (int t = 0; t < g.strategies(i); ++t) {
        if (t == s) continue;
        LpConstraint row;
        row.coeffs.assign(lp.variable_count, Rational(0));
        row.relation = Relation::LessEq;
        for (std::size_t idx = 0; idx < lp.variable_count; ++idx) {
          PureProfile prof = g.profile_of(idx);
          if (prof[static_cast<std::size_t>(i)] != s) continue;
          row.coeffs[idx] =
              g.payoff(i, g.deviate_index(idx, i, s, t)) - g.payoff(i, idx);
        }
        lp.constraints.push_back(std::move(row));
      }
  LpConstraint norm;
  norm.coeffs.assign(lp.variable_count, Rational(1));
  norm.relation = Relation::Equal;
  norm.rhs = Rational(1);
  lp.constraints.push_back(std::move(norm));
  return lp;
}

inline CeSolution max_surplus_ce(const Game& g) {
  LinearProgram lp = max_surplus_ce_lp(g);
  LpOutcome out = solve(lp);
  if (out.status != LpStatus::Optimal)
    throw std::logic_error("max-surplus CE program must be feasible and bounded");
  CeSolution sol{out.objective_value, CorrelatedStrategy(g.strategy_counts()),
                 DualCertificate(g.strategy_counts())};
  for (std::size_t idx = 0; idx < lp.variable_count; ++idx)
    if (!out.primal_values[idx].is_zero()) sol.mu.set(idx, out.primal_values[idx]);
  std::size_t row = 0;
  for (int i = 0; i < g.player_count(); ++i)
    for (int s = 0; s < g.strategies(i); ++s)
      for (int t = 0; t < g.strategies(i); ++t)
        if (t != s) sol.certificate.alpha(i, s, t) = out.dual_values[row++];
  sol.certificate.beta = out.dual_values[row];
  return sol;
}

inline std::vector<PureProfile> pure_nash(const Game& g) {
  std::vector<PureProfile> result;
  for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
    PureProfile prof = g.profile_of(idx);
    bool stable = true;
    for (int i = 0; i < g.player_count() && stable; ++i) {
      int s = prof[static_cast<std::size_t>(i)];
      for (int t = 0; t < g.strategies(i) && stable; ++t)
        if (t != s && g.payoff(i, g.deviate_index(idx, i, s, t)) > g.payoff(i, idx))
          stable = false;
    }
    if (stable) result.push_back(std::move(prof));
  }
  return result;
}

/// Largest gain any player can get by a unilateral pure deviation from p.
/// Always >= 0; exactly 0 iff p is a mixed-strategy equilibrium.
inline Rational best_regret(const Game& g, const MixedProfile& p) {
  require_valid(g, p);
  Rational best;
  for (int i = 0; i < g.player_count(); ++i) {
    std::vector<Rational> against(static_cast<std::size_t>(g.strategies(i)));
    for (std::size_t idx = 0; idx < g.profile_count(); ++idx) {
      PureProfile prof = g.profile_of(idx);
      Rational others(1);
      for (int j = 0; j < g.player_count() && !others.is_zero(); ++j)
        if (j != i)
          others *= p[static_cast<std::size_t>(j)]
                     [static_cast<std::size_t>(prof[static_cast<std::size_t>(j)])];
      if (others.is_zero()) continue;
      against[static_cast<std::size_t>(prof[static_cast<std::size_t>(i)])] +=
          others * g.payoff(i, idx);
    }
    Rational current;
    for (int t = 0; t < g.strategies(i); ++t)
      current += p[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
                 against[static_cast<std::size_t>(t)];
    for (int t = 0; t < g.strategies(i); ++t) {
      Rational gain = against[static_cast<std::size_t>(t)] - current;
      if (gain > best) best = gain;
    }
  }
  return best;
}

inline Rational mixed_surplus(const Game& g, const MixedProfile& p) {
  return surplus(g, product_distribution(g, p));
}

enum class Completeness { Complete, PureOnly, Partial };

struct NashPoint {
  MixedProfile profile;
  Rational surplus;
};

struct NashSet {
  std::vector<NashPoint> equilibria;
  Completeness completeness = Completeness::Partial;
  bool degenerate_flag = false;
};

namespace detail {

struct LinearSolution {
  bool consistent = false;
  bool unique = false;
  std::vector<Rational> values;
};

/// Exact Gauss-Jordan; free variables are reported as zero.
inline LinearSolution solve_linear(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t pr = r;
    while (pr < m && a[pr][col].is_zero()) ++pr;
    if (pr == m) continue;
    std::swap(a[pr], a[r]);
    std::swap(b[pr], b[r]);
    Rational pv = a[r][col];
    for (auto& x : a[r]) x /= pv;
    b[r] /= pv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < n; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  LinearSolution out;
  for (std::size_t i = r; i < m; ++i)
    if (!b[i].is_zero()) return out;  // inconsistent
  out.consistent = true;
  out.unique = pivot_col.size() == n;
  out.values.assign(n, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) out.values[pivot_col[i]] = b[i];
  return out;
}

inline std::vector<std::vector<int>> combinations(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= m - (k - static_cast<int>(cur.size())); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

struct HalfspaceSystem {
  std::vector<std::pair<std::vector<Rational>, Rational>> equalities;    // a.x = b
  std::vector<std::pair<std::vector<Rational>, Rational>> inequalities;  // a.x >= b
};

/// All vertices of {x : equalities hold, inequalities hold}: every subset of
/// inequalities is tried as a tight set, the square-solvable feasible
/// solutions are collected.  Exponential in the inequality count, which stays
/// single-digit at the game sizes handled here.
inline std::vector<std::vector<Rational>> polytope_vertices(const HalfspaceSystem& sys,
                                                            std::size_t dim) {
  std::vector<std::vector<Rational>> vertices;
  std::set<std::vector<Rational>> seen;
  const std::size_t k = sys.inequalities.size();
  if (k > 20) throw DomainError("vertex enumeration limited to 20 inequalities");
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << k); ++mask) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const auto& [row, rhs] : sys.equalities) {
      a.push_back(row);
      b.push_back(rhs);
    }
    for (std::size_t t = 0; t < k; ++t)
      if (mask & (static_cast<std::size_t>(1) << t)) {
        a.push_back(sys.inequalities[t].first);
        b.push_back(sys.inequalities[t].second);
      }
    LinearSolution sol = solve_linear(std::move(a), std::move(b));
    if (!sol.consistent || !sol.unique) continue;
    bool feasible = true;
    for (const auto& [row, rhs] : sys.inequalities) {
      Rational lhs;
      for (std::size_t j = 0; j < dim; ++j) lhs += row[j] * sol.values[j];
      if (lhs < rhs) {
        feasible = false;
        break;
      }
    }
    if (feasible && seen.insert(sol.values).second) vertices.push_back(sol.values);
  }
  return vertices;
}

}  // namespace detail

/// Exact support enumeration for two-player games.  Equal-size supports are
/// solved through the indifference systems; any evidence of degeneracy
/// (singular system, zero weight inside a support, an exact payoff tie with a
/// strategy outside the support) downgrades completeness to Partial and
/// triggers a vertex-level sweep of every support pair, which harvests all
/// extreme equilibria.  For a game with no degeneracy evidence the returned
/// set is the complete (finite) set of equilibria.
inline NashSet support_enumeration_2p(const Game& g) {
  if (g.player_count() != 2)
    throw DomainError("support enumeration requires exactly two players");
  const int m1 = g.strategies(0), m2 = g.strategies(1);
  auto u1 = [&](int r, int c) -> const Rational& {
    return g.payoff(0, static_cast<std::size_t>(r) * static_cast<std::size_t>(m2) +
                           static_cast<std::size_t>(c));
  };
  auto u2 = [&](int r, int c) -> const Rational& {
    return g.payoff(1, static_cast<std::size_t>(r) * static_cast<std::size_t>(m2) +
                           static_cast<std::size_t>(c));
  };

  NashSet result;
  std::set<std::pair<std::vector<Rational>, std::vector<Rational>>> seen;
  auto record = [&](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    MixedProfile prof{p, q};
    if (best_regret(g, prof) != 0) return;
    if (!seen.insert({p, q}).second) return;
    result.equilibria.push_back({prof, mixed_surplus(g, prof)});
  };

  bool degenerate = false;
  // q is determined by player 1's indifference across R, p by player 2's
  // indifference across C; a square system each for equal-size supports.
  auto solve_side = [&](const std::vector<int>& own_support,
                        const std::vector<int>& opp_support, int own_size, bool for_q)
      -> std::optional<std::vector<Rational>> {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    int r0 = opp_support[0];
    for (std::size_t k = 1; k < opp_support.size(); ++k) {
      std::vector<Rational> row(static_cast<std::size_t>(own_size));
      for (int c : own_support) {
        Rational diff = for_q ? u1(r0, c) - u1(opp_support[k], c)
                              : u2(c, r0) - u2(c, opp_support[k]);
        row[static_cast<std::size_t>(c)] = diff;
      }
      a.push_back(std::move(row));
      b.push_back(Rational(0));
    }
    std::vector<Rational> ones(static_cast<std::size_t>(own_size));
    for (int c : own_support) ones[static_cast<std::size_t>(c)] = Rational(1);
    a.push_back(std::move(ones));
    b.push_back(Rational(1));
    for (int c = 0; c < own_size; ++c) {
      if (std::find(own_support.begin(), own_support.end(), c) != own_support.end()) continue;
      std::vector<Rational> row(static_cast<std::size_t>(own_size));
      row[static_cast<std::size_t>(c)] = Rational(1);
      a.push_back(std::move(row));
      b.push_back(Rational(0));
    }
    detail::LinearSolution sol = detail::solve_linear(std::move(a), std::move(b));
    if (!sol.consistent) return std::nullopt;
    if (!sol.unique) {
      degenerate = true;
      return std::nullopt;
    }
    return sol.values;
  };

  for (int k = 1; k <= std::min(m1, m2); ++k) {
    for (const auto& R : detail::combinations(m1, k)) {
      for (const auto& C : detail::combinations(m2, k)) {
        auto q = solve_side(C, R, m2, /*for_q=*/true);
        auto p = solve_side(R, C, m1, /*for_q=*/false);
        bool okq = q && std::all_of(q->begin(), q->end(), [](const Rational& x) { return x >= 0; });
        bool okp = p && std::all_of(p->begin(), p->end(), [](const Rational& x) { return x >= 0; });
        if (okq) {
          for (int c : C)
            if ((*q)[static_cast<std::size_t>(c)].is_zero()) degenerate = true;
          Rational v1;
          for (int c = 0; c < m2; ++c) v1 += (*q)[static_cast<std::size_t>(c)] * u1(R[0], c);
          for (int t = 0; t < m1; ++t) {
            if (std::find(R.begin(), R.end(), t) != R.end()) continue;
            Rational vt;
            for (int c = 0; c < m2; ++c) vt += (*q)[static_cast<std::size_t>(c)] * u1(t, c);
            if (vt == v1) degenerate = true;
          }
        }
        if (okp) {
          for (int r : R)
            if ((*p)[static_cast<std::size_t>(r)].is_zero()) degenerate = true;
          Rational v2;
          for (int r = 0; r < m1; ++r) v2 += (*p)[static_cast<std::size_t>(r)] * u2(r, C[0]);
          for (int t = 0; t < m2; ++t) {
            if (std::find(C.begin(), C.end(), t) != C.end()) continue;
            Rational vt;
            for (int r = 0; r < m1; ++r) vt += (*p)[static_cast<std::size_t>(r)] * u2(r, t);
            if (vt == v2) degenerate = true;
          }
        }
        if (okq && okp) record(*p, *q);
      }
    }
  }

  if (degenerate) {
    auto all_supports = [](int m) {
      std::vector<std::vector<int>> out;
      for (int k = 1; k <= m; ++k)
        for (auto& s : detail::combinations(m, k)) out.push_back(std::move(s));
      return out;
    };
    // Polytope of one player's distributions making the opponent indifferent
    // across R and weakly preferring R, with support inside C.
    auto side_polytope = [&](const std::vector<int>& R, const std::vector<int>& C, bool for_q) {
      detail::HalfspaceSystem sys;
      const int dim = for_q ? m2 : m1;
      const int opp = for_q ? m1 : m2;
      auto uu = [&](int own, int other) -> const Rational& {
        return for_q ? u1(other, own) : u2(own, other);
      };
      std::vector<Rational> ones(static_cast<std::size_t>(dim), Rational(1));
      sys.equalities.push_back({ones, Rational(1)});
      int r0 = R[0];
      for (std::size_t k = 1; k < R.size(); ++k) {
        std::vector<Rational> row(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) row[static_cast<std::size_t>(c)] = uu(c, r0) - uu(c, R[k]);
        sys.equalities.push_back({std::move(row), Rational(0)});
      }
      for (int c = 0; c < dim; ++c) {
        if (std::find(C.begin(), C.end(), c) != C.end()) continue;
        std::vector<Rational> row(static_cast<std::size_t>(dim));
        row[static_cast<std::size_t>(c)] = Rational(1);
        sys.equalities.push_back({std::move(row), Rational(0)});
      }
      for (int c : C) {
        std::vector<Rational> row(static_cast<std::size_t>(dim));
        row[static_cast<std::size_t>(c)] = Rational(1);
        sys.inequalities.push_back({std::move(row), Rational(0)});
      }
      for (int t = 0; t < opp; ++t) {
        if (std::find(R.begin(), R.end(), t) != R.end()) continue;
        std::vector<Rational> row(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) row[static_cast<std::size_t>(c)] = uu(c, r0) - uu(c, t);
        sys.inequalities.push_back({std::move(row), Rational(0)});
      }
      return detail::polytope_vertices(sys, static_cast<std::size_t>(dim));
    };
    for (const auto& R : all_supports(m1))
      for (const auto& C : all_supports(m2)) {
        auto qs = side_polytope(R, C, /*for_q=*/true);
        if (qs.empty()) continue;
        auto ps = side_polytope(C, R, /*for_q=*/false);
        for (const auto& q : qs)
          for (const auto& p : ps) record(p, q);
      }
  }

  result.degenerate_flag = degenerate;
  result.completeness = degenerate ? Completeness::Partial : Completeness::Complete;
  return result;
}

struct NashValue {
  std::optional<Rational> value;  // empty: no equilibrium found by an incomplete method
  Completeness completeness = Completeness::Partial;
};

/// Maximal surplus over the discovered equilibrium set.  Exact for two-player
/// nondegenerate games (Complete); otherwise a certified lower bound from
/// pure enumeration (PureOnly) plus any verified caller-supplied candidates
/// (Partial).  Never silently zero: an empty incomplete search yields an
/// empty value.
inline NashValue nash_value(const Game& g, const std::vector<MixedProfile>& candidates = {}) {
  NashValue out;
  std::optional<Rational> best;
  auto consider = [&](const Rational& s) {
    if (!best || s > *best) best = s;
  };
  if (g.player_count() == 2) {
    NashSet set = support_enumeration_2p(g);
    for (const auto& e : set.equilibria) consider(e.surplus);
    out.completeness = set.completeness;
  } else if (g.player_count() == 1) {
    out.completeness = Completeness::Complete;  // single player: pure argmax is exact
    for (std::size_t idx = 0; idx < g.profile_count(); ++idx) consider(g.profile_surplus(idx));
  } else {
    out.completeness = candidates.empty() ? Completeness::PureOnly : Completeness::Partial;
    for (const auto& prof : pure_nash(g)) consider(g.profile_surplus(g.index_of(prof)));
  }
  for (const auto& p : candidates)
    if (best_regret(g, p) == 0) consider(mixed_surplus(g, p));
  out.value = best;
  return out;
}

}  // namespace gamevalue
