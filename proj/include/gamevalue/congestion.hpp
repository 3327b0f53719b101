#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gamevalue/equilibria.hpp"
#include "gamevalue/game.hpp"

namespace gamevalue {

/// Per-facility occupancy counts, summing to the player count.
using CongestionVector = std::vector<int>;

/// Simple congestion form: n players each pick one of m facilities; every
/// user of facility j receives w_j(k) when k players share it, w_j(0) = 0.
/// The symmetric / non-increasing / linear flags are always recomputed from
/// the table, never taken from input.
class CongestionForm {
 public:
  CongestionForm(int player_count, std::vector<std::vector<Rational>> table)
      : n_(player_count), w_(std::move(table)) {
    if (n_ < 1) throw DimensionError("congestion form needs at least one player");
    if (w_.empty()) throw DimensionError("congestion form needs at least one facility");
    for (std::size_t j = 0; j < w_.size(); ++j) {
      if (static_cast<int>(w_[j].size()) != n_)
        throw DimensionError("facility " + std::to_string(j + 1) + " has " +
                             std::to_string(w_[j].size()) + " payoff values, expected " +
                             std::to_string(n_));
      for (int k = 0; k < n_; ++k)
        if (w_[j][static_cast<std::size_t>(k)] < 0)
          throw NegativePayoffError("negative facility payoff w_" + std::to_string(j + 1) +
                                    "(" + std::to_string(k + 1) + ") = " +
                                    w_[j][static_cast<std::size_t>(k)].str());
    }
  }

  int player_count() const { return n_; }
  int facility_count() const { return static_cast<int>(w_.size()); }
  const std::vector<std::vector<Rational>>& table() const { return w_; }

  /// w_j(k), with w_j(0) = 0.
  Rational w(int facility, int load) const {
    if (facility < 0 || facility >= facility_count())
      throw DomainError("facility index out of range");
    if (load < 0 || load > n_) throw DomainError("facility load out of range");
    return load == 0 ? Rational(0) : w_[static_cast<std::size_t>(facility)]
                                       [static_cast<std::size_t>(load - 1)];
  }

  bool symmetric() const {
    for (std::size_t j = 1; j < w_.size(); ++j)
      if (w_[j] != w_[0]) return false;
    return true;
  }
  bool non_increasing() const {
    for (const auto& col : w_)
      for (std::size_t k = 1; k < col.size(); ++k)
        if (col[k] > col[k - 1]) return false;
    return true;
  }
  /// Constant load increments: w_j(k) - w_j(k+1) = d_j for all 1 <= k < n.
  bool linear() const {
    for (std::size_t j = 0; j < w_.size(); ++j)
      if (!difference(static_cast<int>(j))) return false;
    return true;
  }
  /// d_j when facility j is linear.
  std::optional<Rational> difference(int facility) const {
    const auto& col = w_.at(static_cast<std::size_t>(facility));
    if (col.size() == 1) return Rational(0);
    Rational d = col[0] - col[1];
    for (std::size_t k = 1; k + 1 < col.size(); ++k)
      if (col[k] - col[k + 1] != d) return std::nullopt;
    return d;
  }

 private:
  int n_;
  std::vector<std::vector<Rational>> w_;
};

inline void require_valid(const CongestionForm& f, const CongestionVector& pi) {
  if (static_cast<int>(pi.size()) != f.facility_count())
    throw DimensionError("congestion vector length != facility count");
  int total = 0;
  for (int x : pi) {
    if (x < 0) throw DomainError("negative occupancy count");
    total += x;
  }
  if (total != f.player_count())
    throw DomainError("occupancy counts must sum to the player count");
}

/// The induced game: n players, m strategies each, u^i(A) = w_{A^i}(load of A^i).
inline Game induce_game(const CongestionForm& f) {
  std::vector<int> counts(static_cast<std::size_t>(f.player_count()), f.facility_count());
  return Game::from_function(counts, [&](int i, const PureProfile& a) {
    int mine = a[static_cast<std::size_t>(i)];
    int load = 0;
    for (int choice : a)
      if (choice == mine) ++load;
    return f.w(mine, load);
  });
}

inline CongestionVector vector_of_profile(const CongestionForm& f, const PureProfile& a) {
  if (static_cast<int>(a.size()) != f.player_count())
    throw DimensionError("profile length != player count");
  CongestionVector pi(static_cast<std::size_t>(f.facility_count()), 0);
  for (int choice : a) {
    if (choice < 0 || choice >= f.facility_count())
      throw DomainError("facility index out of range in profile");
    ++pi[static_cast<std::size_t>(choice)];
  }
  return pi;
}

/// u(pi) = sum_j pi_j w_j(pi_j); every profile realizing pi has this surplus.
inline Rational surplus_of_vector(const CongestionForm& f, const CongestionVector& pi) {
  require_valid(f, pi);
  Rational total;
  for (int j = 0; j < f.facility_count(); ++j)
    total += Rational(pi[static_cast<std::size_t>(j)]) * f.w(j, pi[static_cast<std::size_t>(j)]);
  return total;
}

namespace detail {

inline void enumerate_profiles(const CongestionForm& f,
                               const std::function<void(const PureProfile&)>& visit) {
  PureProfile a(static_cast<std::size_t>(f.player_count()), 0);
  while (true) {
    visit(a);
    int i = f.player_count() - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == f.facility_count() - 1) {
      a[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++a[static_cast<std::size_t>(i)];
  }
}

}  // namespace detail

/// B_pi: all strategy profiles whose occupancy vector equals pi.
inline std::vector<PureProfile> profiles_with_vector(const CongestionForm& f,
                                                     const CongestionVector& pi) {
  require_valid(f, pi);
  std::vector<PureProfile> out;
  detail::enumerate_profiles(f, [&](const PureProfile& a) {
    if (vector_of_profile(f, a) == pi) out.push_back(a);
  });
  return out;
}

/// A_pi: the union of B over all facility permutations of pi, deduplicated.
inline std::vector<PureProfile> orbit_profiles(const CongestionForm& f,
                                               const CongestionVector& pi) {
  require_valid(f, pi);
  std::set<CongestionVector> images;
  CongestionVector sorted = pi;
  std::sort(sorted.begin(), sorted.end());
  do {
    images.insert(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  std::vector<PureProfile> out;
  detail::enumerate_profiles(f, [&](const PureProfile& a) {
    if (images.count(vector_of_profile(f, a))) out.push_back(a);
  });
  return out;
}

/// pi is in equilibrium iff no occupied facility's user can strictly gain by
/// moving: payoffs depend only on counts, so one representative of B_pi
/// decides for all of them.
inline bool vector_in_equilibrium(const CongestionForm& f, const CongestionVector& pi) {
  require_valid(f, pi);
  for (int j = 0; j < f.facility_count(); ++j) {
    if (pi[static_cast<std::size_t>(j)] == 0) continue;
    Rational here = f.w(j, pi[static_cast<std::size_t>(j)]);
    for (int j2 = 0; j2 < f.facility_count(); ++j2)
      if (j2 != j && f.w(j2, pi[static_cast<std::size_t>(j2)] + 1) > here) return false;
  }
  return true;
}

struct BestResponseRun {
  PureProfile profile;
  long long moves = 0;
};

/// Pure equilibrium by best-response dynamics from the all-on-facility-0
/// profile.  Each improving move strictly raises the potential
/// sum_j sum_{k<=load_j} w_j(k), which depends only on the occupancy vector
/// and so takes finitely many values: the iteration terminates.
inline BestResponseRun best_response_equilibrium_run(const CongestionForm& f) {
  BestResponseRun run;
  run.profile.assign(static_cast<std::size_t>(f.player_count()), 0);
  PureProfile& a = run.profile;
  CongestionVector load(static_cast<std::size_t>(f.facility_count()), 0);
  load[0] = f.player_count();
  long long cap = static_cast<long long>(f.player_count());
  for (int i = 0; i < f.player_count(); ++i) {
    cap *= f.facility_count();
    if (cap > (1LL << 40)) {
      cap = 1LL << 40;
      break;
    }
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < f.player_count(); ++i) {
      int cur = a[static_cast<std::size_t>(i)];
      Rational here = f.w(cur, load[static_cast<std::size_t>(cur)]);
      int best = cur;
      Rational best_pay = here;
      for (int j = 0; j < f.facility_count(); ++j) {
        if (j == cur) continue;
        Rational pay = f.w(j, load[static_cast<std::size_t>(j)] + 1);
        if (pay > best_pay) {
          best_pay = pay;
          best = j;
        }
      }
      if (best != cur) {
        --load[static_cast<std::size_t>(cur)];
        ++load[static_cast<std::size_t>(best)];
        a[static_cast<std::size_t>(i)] = best;
        moved = true;
        if (++run.moves > cap) throw std::logic_error("best-response dynamics failed to settle");
      }
    }
  }
  return run;
}

inline PureProfile best_response_equilibrium(const CongestionForm& f) {
  return best_response_equilibrium_run(f).profile;
}

/// Every occupancy vector: the compositions of n into m nonnegative parts,
/// in a fixed deterministic order.
inline std::vector<CongestionVector> all_occupancy_vectors(int n, int m) {
  std::vector<CongestionVector> out;
  CongestionVector cur(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m - 1) {
      cur[static_cast<std::size_t>(j)] = left;
      out.push_back(cur);
      return;
    }
    for (int x = left; x >= 0; --x) {
      cur[static_cast<std::size_t>(j)] = x;
      rec(j + 1, left - x);
    }
  };
  rec(0, n);
  return out;
}

/// Maximal surplus over occupancy vectors; for the induced game this equals
/// opt, since the surplus of a profile depends only on its vector.
inline Rational opt_over_vectors(const CongestionForm& f) {
  Rational best;
  bool first = true;
  for (const auto& pi : all_occupancy_vectors(f.player_count(), f.facility_count())) {
    Rational u = surplus_of_vector(f, pi);
    if (first || u > best) {
      best = u;
      first = false;
    }
  }
  return best;
}

struct OrbitCeResult {
  bool achieved = false;
  CongestionVector vector;                // witness occupancy vector, when achieved
  std::optional<CorrelatedStrategy> mu;   // the uniform-over-orbit witness
};

/// For a facility-symmetric form: walks the occupancy vectors attaining the
/// maximal surplus (one canonical representative per facility-permutation
/// orbit) and returns the first whose uniform distribution over the orbit is
/// a correlated equilibrium.  On non-increasing symmetric forms a miss proves
/// v_C < opt; on merely symmetric forms it only means no uniform witness.
inline OrbitCeResult optimal_uniform_orbit_ce(const CongestionForm& f) {
  if (!f.symmetric())
    throw DomainError("the uniform-orbit search applies to facility-symmetric forms");
  Game g = induce_game(f);
  Rational target = opt_over_vectors(f);
  std::set<CongestionVector> canonical;
  std::vector<CongestionVector> order;
  for (const auto& pi : all_occupancy_vectors(f.player_count(), f.facility_count())) {
    if (surplus_of_vector(f, pi) != target) continue;
    CongestionVector canon = pi;
    std::sort(canon.begin(), canon.end());
    if (canonical.insert(canon).second) order.push_back(canon);
  }
  for (const auto& pi : order) {
    CorrelatedStrategy mu = CorrelatedStrategy::uniform_over(g, orbit_profiles(f, pi));
    if (is_correlated_equilibrium(g, mu)) return {true, pi, std::move(mu)};
  }
  return {};
}

/// Facility roles for two-facility analyses, labels normalized so that the
/// f role has the larger single-user payoff.
struct TwoFacilityRoles {
  int f = 0;  // facility index playing the f role (w_f(1) >= w_g(1))
  int g = 1;
};

inline TwoFacilityRoles two_facility_roles(const CongestionForm& form) {
  if (form.facility_count() != 2)
    throw DomainError("two-facility analysis requires exactly two facilities");
  TwoFacilityRoles roles;
  if (form.w(1, 1) > form.w(0, 1)) roles = {1, 0};
  return roles;
}

inline CongestionVector split_vector(const CongestionForm& form, const TwoFacilityRoles& roles,
                                     int on_g) {
  CongestionVector pi(2, 0);
  pi[static_cast<std::size_t>(roles.f)] = form.player_count() - on_g;
  pi[static_cast<std::size_t>(roles.g)] = on_g;
  return pi;
}

/// Largest s such that the split with s players on the g-role facility is in
/// equilibrium.  Some split always is, by the potential argument.
inline int largest_equilibrium_split(const CongestionForm& form) {
  TwoFacilityRoles roles = two_facility_roles(form);
  for (int s = form.player_count(); s >= 0; --s)
    if (vector_in_equilibrium(form, split_vector(form, roles, s))) return s;
  throw std::logic_error("no equilibrium split exists");
}

namespace detail {

inline void require_linear_two_facility(const CongestionForm& form) {
  if (form.facility_count() != 2)
    throw DomainError("this analysis requires exactly two facilities");
  if (!form.non_increasing())
    throw DomainError("this analysis requires non-increasing facilities");
  if (!form.linear()) throw DomainError("this analysis requires linear facilities");
}

}  // namespace detail

/// Mixing probability p_k = (w_g(1) - w_f(n)) / ((k-1)(d_f + d_g)) for the
/// split profile with n-k players pinned to f and k players mixing toward g.
/// Empty when the construction does not apply (k < 2, zero denominator, or
/// p_k outside [0,1]).
inline std::optional<Rational> mixed_split_probability(const CongestionForm& form, int k) {
  detail::require_linear_two_facility(form);
  TwoFacilityRoles roles = two_facility_roles(form);
  if (k < 2 || k > form.player_count()) return std::nullopt;
  Rational df = *form.difference(roles.f), dg = *form.difference(roles.g);
  if ((df + dg).is_zero()) return std::nullopt;
  Rational p = (form.w(roles.g, 1) - form.w(roles.f, form.player_count())) /
               (Rational(k - 1) * (df + dg));
  if (p < 0 || p > 1) return std::nullopt;
  return p;
}

/// The mixed profile itself: players 0..n-k-1 play the f-role facility with
/// probability one, the remaining k play the g role with probability p_k.
inline std::optional<MixedProfile> mixed_split_equilibrium(const CongestionForm& form, int k) {
  auto p = mixed_split_probability(form, k);
  if (!p) return std::nullopt;
  TwoFacilityRoles roles = two_facility_roles(form);
  int n = form.player_count();
  MixedProfile prof(static_cast<std::size_t>(n), std::vector<Rational>(2));
  for (int i = 0; i < n; ++i) {
    auto& dist = prof[static_cast<std::size_t>(i)];
    if (i < n - k) {
      dist[static_cast<std::size_t>(roles.f)] = Rational(1);
      dist[static_cast<std::size_t>(roles.g)] = Rational(0);
    } else {
      dist[static_cast<std::size_t>(roles.g)] = *p;
      dist[static_cast<std::size_t>(roles.f)] = Rational(1) - *p;
    }
  }
  return prof;
}

/// Closed-form expected surplus of the mixed split profile:
/// n w_f(n) + p_k d_f ((n-k)k + k(k-1)).
inline std::optional<Rational> mixed_split_surplus_formula(const CongestionForm& form, int k) {
  auto p = mixed_split_probability(form, k);
  if (!p) return std::nullopt;
  TwoFacilityRoles roles = two_facility_roles(form);
  int n = form.player_count();
  Rational df = *form.difference(roles.f);
  return Rational(n) * form.w(roles.f, n) +
         *p * df * Rational(static_cast<long long>(n - k) * k + static_cast<long long>(k) * (k - 1));
}

/// Split surpluses do not decrease up to the largest equilibrium split:
/// u(pi_j) <= u(pi_s) for every j <= s.
inline bool split_surplus_monotone(const CongestionForm& form) {
  detail::require_linear_two_facility(form);
  TwoFacilityRoles roles = two_facility_roles(form);
  int s = largest_equilibrium_split(form);
  Rational at_s = surplus_of_vector(form, split_vector(form, roles, s));
  for (int j = 0; j <= s; ++j)
    if (surplus_of_vector(form, split_vector(form, roles, j)) > at_s) return false;
  return true;
}

struct GoldenRatioAudit {
  Rational ce_value;   // v_C of the induced game, from the exact LP
  Rational bound_base; // max of the best-split surplus and the mixed-split surplus
  int split = 0;       // s
  bool mixed_split_used = false;
  bool pass = false;   // v_C <= phi * bound_base, decided in exact arithmetic
};

/// Audits v_C <= phi * max{u(pi_s), u(q_{s+1})} with phi = (sqrt(5)+1)/2.
/// The comparison v <= phi B is decided without floats:
/// 2v - B <= 0, or (2v - B)^2 <= 5 B^2.
inline GoldenRatioAudit golden_ratio_bound_audit(const CongestionForm& form) {
  detail::require_linear_two_facility(form);
  TwoFacilityRoles roles = two_facility_roles(form);
  GoldenRatioAudit audit;
  audit.split = largest_equilibrium_split(form);
  audit.bound_base = surplus_of_vector(form, split_vector(form, roles, audit.split));
  if (auto q = mixed_split_surplus_formula(form, audit.split + 1)) {
    audit.mixed_split_used = true;
    audit.bound_base = std::max(audit.bound_base, *q);
  }
  audit.ce_value = max_surplus_ce(induce_game(form)).value;
  Rational t = Rational(2) * audit.ce_value - audit.bound_base;
  audit.pass = t <= 0 || t * t <= Rational(5) * audit.bound_base * audit.bound_base;
  return audit;
}

enum class ConcaveOutcome { OptimalEquilibrium, NotConcave, Violation };

struct ConcaveCheck {
  ConcaveOutcome outcome = ConcaveOutcome::NotConcave;
  std::optional<PureProfile> witness;  // a pure equilibrium attaining opt
};

/// For a symmetric form with n >= m: tests concavity of v(k) = k w(k)
/// (differences non-increasing from k = 2 on) and, when concave, locates a
/// pure equilibrium attaining the maximal surplus.  Violation would falsify
/// the concavity guarantee and must never occur.  The concavity test runs
/// before the monotonicity requirement so that non-monotone tables report
/// NotConcave when their v fails, instead of erroring.
inline ConcaveCheck concave_optimal_equilibrium(const CongestionForm& form) {
  if (!form.symmetric())
    throw DomainError("the concavity analysis applies to facility-symmetric forms");
  if (form.player_count() < form.facility_count())
    throw DomainError("the concavity analysis requires at least as many players as facilities");
  int n = form.player_count();
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) v[static_cast<std::size_t>(k)] = Rational(k) * form.w(0, k);
  for (int k = 2; k + 1 <= n; ++k)
    if (v[static_cast<std::size_t>(k + 1)] - v[static_cast<std::size_t>(k)] >
        v[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k - 1)])
      return {ConcaveOutcome::NotConcave, std::nullopt};
  if (!form.non_increasing())
    throw DomainError("the concavity guarantee is stated for non-increasing facilities");
  Rational target = opt_over_vectors(form);
  for (const auto& pi : all_occupancy_vectors(n, form.facility_count())) {
    if (surplus_of_vector(form, pi) != target || !vector_in_equilibrium(form, pi)) continue;
    auto members = profiles_with_vector(form, pi);
    return {ConcaveOutcome::OptimalEquilibrium, members.front()};
  }
  return {ConcaveOutcome::Violation, std::nullopt};
}

}  // namespace gamevalue
