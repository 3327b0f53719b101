#pragma once

#include <optional>
#include <string>

#include "gamevalue/equilibria.hpp"
#include "gamevalue/game.hpp"

namespace gamevalue {

/// A rational or the positive infinity arising from the x/0 conventions.
/// Never a float.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit by design
  static ExtendedRational infinity() {
    ExtendedRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& finite_value() const {
    if (infinite_) throw DomainError("infinite value has no rational representation");
    return value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedRational& a, const ExtendedRational& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }

 private:
  bool infinite_ = false;
  Rational value_;
};

/// v_C / v_N with the conventions 0/0 -> 1 and positive/0 -> infinity.
inline ExtendedRational value_ratio(const Rational& numer, const Rational& denom) {
  if (denom.is_zero())
    return numer.is_zero() ? ExtendedRational(Rational(1)) : ExtendedRational::infinity();
  return ExtendedRational(numer / denom);
}

struct ValueReport {
  std::optional<Rational> nash_value;  // v_N; empty when no equilibrium was found
  Completeness nash_completeness = Completeness::Partial;
  Rational ce_value;   // v_C
  Rational opt_value;  // opt
  std::optional<ExtendedRational> mediation;  // empty: indeterminate (v_N unknown)
  ExtendedRational enforcement;
};

/// Full analysis with witnesses; ValueReport is the plain-values view of it.
struct Analysis {
  ValueReport report;
  CeSolution ce;
  NashSet nash;  // empty equilibria list for n != 2 (values come from pure enumeration)
};

inline Analysis analyze_game(const Game& g, const std::vector<MixedProfile>& candidates = {}) {
  Analysis a{ValueReport{}, max_surplus_ce(g), NashSet{}};
  auto already_listed = [&](const MixedProfile& p) {
    for (const auto& e : a.nash.equilibria)
      if (e.profile == p) return true;
    return false;
  };
  if (g.player_count() == 2) {
    a.nash = support_enumeration_2p(g);
    for (const auto& cand : candidates)
      if (!already_listed(cand) && best_regret(g, cand) == 0)
        a.nash.equilibria.push_back({cand, mixed_surplus(g, cand)});
    for (const auto& e : a.nash.equilibria) {
      if (!a.report.nash_value || e.surplus > *a.report.nash_value)
        a.report.nash_value = e.surplus;
    }
    a.report.nash_completeness = a.nash.completeness;
  } else {
    NashValue vn = nash_value(g, candidates);
    a.report.nash_value = vn.value;
    a.report.nash_completeness = vn.completeness;
    a.nash.completeness = vn.completeness;
    for (const auto& prof : pure_nash(g)) {
      MixedProfile p = pure_as_mixed(g, prof);
      a.nash.equilibria.push_back({p, g.profile_surplus(g.index_of(prof))});
    }
    for (const auto& cand : candidates)
      if (!already_listed(cand) && best_regret(g, cand) == 0)
        a.nash.equilibria.push_back({cand, mixed_surplus(g, cand)});
  }
  a.report.ce_value = a.ce.value;
  a.report.opt_value = opt(g);
  if (a.report.nash_value)
    a.report.mediation = value_ratio(a.report.ce_value, *a.report.nash_value);
  a.report.enforcement = value_ratio(a.report.opt_value, a.report.ce_value);
  return a;
}

/// v_C / v_N.  Empty when v_N is unknown; computed from a PureOnly or
/// Partial v_N it is an upper-bound estimate, which the completeness flag in
/// the surrounding report records.
inline std::optional<ExtendedRational> mediation_value(const Game& g) {
  NashValue vn = nash_value(g);
  if (!vn.value) return std::nullopt;
  return value_ratio(max_surplus_ce(g).value, *vn.value);
}

/// opt / v_C with the same zero conventions.
inline ExtendedRational enforcement_value(const Game& g) {
  return value_ratio(opt(g), max_surplus_ce(g).value);
}

inline ValueReport analyze(const Game& g) { return analyze_game(g).report; }

}  // namespace gamevalue
