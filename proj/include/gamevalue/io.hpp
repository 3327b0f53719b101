#pragma once

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gamevalue/congestion.hpp"
#include "gamevalue/game.hpp"
#include "gamevalue/values.hpp"

namespace gamevalue {

using Json = nlohmann::json;

/// Exact numeric entries in files: a JSON integer, a "p/q" string, or an
/// exact decimal string like "1.5".  Raw JSON floats are rejected so no
/// value ever passes through a double.
inline Rational parse_entry(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_float())
    throw ParseError(where + ": write non-integer payoffs as strings (\"3/2\" or \"1.5\"), "
                             "JSON floats are not exact");
  throw ParseError(where + ": expected an integer or a rational string");
}

inline Json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.numerator() >= std::numeric_limits<long long>::min() &&
      r.numerator() <= std::numeric_limits<long long>::max())
    return Json(r.numerator().convert_to<long long>());
  return Json(r.str());
}

// ---- game files -----------------------------------------------------------
//
// {
//   "players": 2,
//   "strategies": [2, 2],
//   "payoffs": [[5, 0, 4, 1], [1, 0, 4, 5]]
// }
//
// payoffs[i] lists player i+1's payoffs over pure profiles in row-major
// order, the last player's strategy index varying fastest.

inline Game game_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("strategies") ||
      !j.contains("payoffs"))
    throw ParseError("game file needs the fields players, strategies, payoffs");
  if (!j["players"].is_number_integer()) throw ParseError("players: expected an integer");
  int n = j["players"].get<int>();
  if (!j["strategies"].is_array())
    throw ParseError("strategies: expected an array of integers");
  std::vector<int> counts;
  for (const auto& c : j["strategies"]) {
    if (!c.is_number_integer()) throw ParseError("strategies: expected an array of integers");
    counts.push_back(c.get<int>());
  }
  if (static_cast<int>(counts.size()) != n)
    throw DimensionError("strategies lists " + std::to_string(counts.size()) +
                         " entries for " + std::to_string(n) + " players");
  if (!j["payoffs"].is_array() || static_cast<int>(j["payoffs"].size()) != n)
    throw DimensionError("payoffs needs one array per player");
  std::vector<std::vector<Rational>> layers;
  for (int i = 0; i < n; ++i) {
    const auto& layer = j["payoffs"][static_cast<std::size_t>(i)];
    if (!layer.is_array())
      throw ParseError("payoffs[" + std::to_string(i) + "]: expected an array");
    std::vector<Rational> vals;
    for (std::size_t s = 0; s < layer.size(); ++s)
      vals.push_back(parse_entry(layer[s], "payoffs[" + std::to_string(i) + "][" +
                                               std::to_string(s) + "]"));
    layers.push_back(std::move(vals));
  }
  return Game(std::move(counts), std::move(layers));
}

inline Json game_to_json(const Game& g) {
  Json j;
  j["players"] = g.player_count();
  j["strategies"] = g.strategy_counts();
  Json layers = Json::array();
  for (int i = 0; i < g.player_count(); ++i) {
    Json layer = Json::array();
    for (std::size_t idx = 0; idx < g.profile_count(); ++idx)
      layer.push_back(rational_to_json(g.payoff(i, idx)));
    layers.push_back(std::move(layer));
  }
  j["payoffs"] = std::move(layers);
  return j;
}

// ---- congestion form files --------------------------------------------------
//
// {
//   "players": 6,
//   "facilities": 2,
//   "w": [["3/2", 1, 4, "9/2", "9/2", 3], ["3/2", 1, 4, "9/2", "9/2", 3]]
// }
//
// w[j] lists w_{j+1}(1), ..., w_{j+1}(n).

inline CongestionForm form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("facilities") || !j.contains("w"))
    throw ParseError("congestion file needs the fields players, facilities, w");
  if (!j["players"].is_number_integer() || !j["facilities"].is_number_integer())
    throw ParseError("players and facilities must be integers");
  int n = j["players"].get<int>();
  int m = j["facilities"].get<int>();
  if (!j["w"].is_array() || static_cast<int>(j["w"].size()) != m)
    throw DimensionError("w needs one payoff array per facility");
  std::vector<std::vector<Rational>> table;
  for (int f = 0; f < m; ++f) {
    const auto& col = j["w"][static_cast<std::size_t>(f)];
    if (!col.is_array()) throw ParseError("w[" + std::to_string(f) + "]: expected an array");
    std::vector<Rational> vals;
    for (std::size_t k = 0; k < col.size(); ++k)
      vals.push_back(
          parse_entry(col[k], "w[" + std::to_string(f) + "][" + std::to_string(k) + "]"));
    table.push_back(std::move(vals));
  }
  return CongestionForm(n, std::move(table));
}

inline Json form_to_json(const CongestionForm& f) {
  Json j;
  j["players"] = f.player_count();
  j["facilities"] = f.facility_count();
  Json table = Json::array();
  for (const auto& col : f.table()) {
    Json c = Json::array();
    for (const auto& v : col) c.push_back(rational_to_json(v));
    table.push_back(std::move(c));
  }
  j["w"] = std::move(table);
  return j;
}

using Input = std::variant<Game, CongestionForm>;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline Game load_game(const std::string& path) { return game_from_json(read_json_file(path)); }
inline CongestionForm load_form(const std::string& path) {
  return form_from_json(read_json_file(path));
}

/// Games carry "payoffs", congestion forms carry "w".
inline Input load_input(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("w")) return form_from_json(j);
  return game_from_json(j);
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

// ---- built-in example registry ----------------------------------------------

/// Named games and congestion forms used throughout the docs and tests:
///   aumann          2x2 game whose best correlated equilibrium beats every
///                   mixed equilibrium (surplus 20/3 vs 6)
///   gamma_x         2x2 family, parameter x > 1; mediation value 4x/(3(x+1))
///                   for x >= 3
///   pd              prisoner's dilemma with reward parameter x > 1;
///                   enforcement value x
///   example1        3 players, facilities (24,12,0) and (8,8,8)
///   example2        6 players, two symmetric facilities (1.5,1,4,4.5,4.5,3)
inline Input example(const std::string& name, std::optional<Rational> param = std::nullopt) {
  auto need_param = [&](const char* why) -> Rational {
    if (!param) throw DomainError("example '" + name + "' needs a parameter: " + why);
    if (*param <= 1)
      throw DomainError("example '" + name + "' needs x > 1, got " + param->str());
    return *param;
  };
  auto no_param = [&] {
    if (param) throw DomainError("example '" + name + "' takes no parameter");
  };
  if (name == "aumann") {
    no_param();
    return Game({2, 2}, {{5, 0, 4, 1}, {1, 0, 4, 5}});
  }
  if (name == "gamma_x") {
    Rational x = need_param("the high payoff x");
    return Game({2, 2}, {{x, 0, x - 1, 1}, {1, 0, x - 1, x}});
  }
  if (name == "pd") {
    Rational x = need_param("the mutual-cooperation payoff x");
    return Game({2, 2}, {{x, 0, x + 1, 1}, {x, x + 1, 0, 1}});
  }
  if (name == "example1") {
    no_param();
    return CongestionForm(3, {{24, 12, 0}, {8, 8, 8}});
  }
  if (name == "example2") {
    no_param();
    std::vector<Rational> w{Rational(3, 2), 1, 4, Rational(9, 2), Rational(9, 2), 3};
    return CongestionForm(6, {w, w});
  }
  throw DomainError("unknown example '" + name +
                    "' (known: aumann, gamma_x, pd, example1, example2)");
}

// ---- rendering ---------------------------------------------------------------

struct RenderOptions {
  bool with_float = false;  // add clearly-marked approximate decimals
};

inline std::string completeness_name(Completeness c) {
  switch (c) {
    case Completeness::Complete: return "complete";
    case Completeness::PureOnly: return "pure-only";
    case Completeness::Partial: return "partial";
  }
  return "?";
}

inline Json extended_to_json(const ExtendedRational& v) { return Json(v.str()); }

inline Json report_to_json(const ValueReport& r, const RenderOptions& opts = {}) {
  Json j;
  j["v_N"] = r.nash_value ? Json(r.nash_value->str()) : Json("unknown");
  j["v_N_completeness"] = completeness_name(r.nash_completeness);
  j["v_C"] = r.ce_value.str();
  j["opt"] = r.opt_value.str();
  j["mediation_value"] = r.mediation ? extended_to_json(*r.mediation) : Json("indeterminate");
  if (r.mediation && r.nash_completeness != Completeness::Complete)
    j["mediation_value_note"] = "upper-bound estimate: v_N is a lower bound";
  j["enforcement_value"] = extended_to_json(r.enforcement);
  if (opts.with_float) {
    Json a;
    if (r.nash_value) a["v_N"] = r.nash_value->approx();
    a["v_C"] = r.ce_value.approx();
    a["opt"] = r.opt_value.approx();
    if (r.mediation && !r.mediation->is_infinite())
      a["mediation_value"] = r.mediation->finite_value().approx();
    if (!r.enforcement.is_infinite())
      a["enforcement_value"] = r.enforcement.finite_value().approx();
    j["approx"] = std::move(a);
  }
  return j;
}

inline Json correlated_to_json(const Game& g, const CorrelatedStrategy& mu) {
  Json arr = Json::array();
  for (const auto& [idx, w] : mu.weights()) {
    Json e;
    e["profile"] = g.profile_of(idx);
    e["weight"] = w.str();
    arr.push_back(std::move(e));
  }
  return arr;
}

inline Json mixed_to_json(const MixedProfile& p) {
  Json arr = Json::array();
  for (const auto& dist : p) {
    Json d = Json::array();
    for (const auto& w : dist) d.push_back(w.str());
    arr.push_back(std::move(d));
  }
  return arr;
}

inline Json certificate_to_json(const Game& g, const DualCertificate& cert) {
  Json j;
  j["beta"] = cert.beta.str();
  Json entries = Json::array();
  for (int i = 0; i < g.player_count(); ++i)
    for (int s = 0; s < g.strategies(i); ++s)
      for (int t = 0; t < g.strategies(i); ++t) {
        if (t == s || cert.alpha(i, s, t).is_zero()) continue;
        Json e;
        e["player"] = i;
        e["recommended"] = s;
        e["deviation"] = t;
        e["alpha"] = cert.alpha(i, s, t).str();
        entries.push_back(std::move(e));
      }
  j["alpha"] = std::move(entries);
  j["verified"] = verify_dual_certificate(g, cert);
  return j;
}

inline Json analysis_to_json(const Game& g, const Analysis& a, const RenderOptions& opts = {}) {
  Json j;
  j["report"] = report_to_json(a.report, opts);
  j["best_correlated_equilibrium"] = correlated_to_json(g, a.ce.mu);
  j["dual_certificate"] = certificate_to_json(g, a.ce.certificate);
  Json nash = Json::array();
  for (const auto& e : a.nash.equilibria) {
    Json pt;
    pt["profile"] = mixed_to_json(e.profile);
    pt["surplus"] = e.surplus.str();
    nash.push_back(std::move(pt));
  }
  j["nash_equilibria"] = std::move(nash);
  j["nash_degenerate"] = a.nash.degenerate_flag;
  return j;
}

inline std::string report_to_text(const ValueReport& r, const RenderOptions& opts = {}) {
  std::ostringstream os;
  auto approx = [&](const Rational& v) {
    if (!opts.with_float) return std::string();
    std::ostringstream t;
    t << " (~" << v.approx() << ")";
    return t.str();
  };
  os << "v_N (best Nash surplus):       ";
  if (r.nash_value)
    os << r.nash_value->str() << approx(*r.nash_value) << "  ["
       << completeness_name(r.nash_completeness) << "]";
  else
    os << "unknown  [" << completeness_name(r.nash_completeness) << "]";
  os << "\n";
  os << "v_C (best CE surplus):         " << r.ce_value.str() << approx(r.ce_value) << "\n";
  os << "opt (maximal surplus):         " << r.opt_value.str() << approx(r.opt_value) << "\n";
  os << "mediation value  (v_C / v_N):  ";
  if (r.mediation) {
    os << r.mediation->str();
    if (opts.with_float && !r.mediation->is_infinite())
      os << " (~" << r.mediation->finite_value().approx() << ")";
    if (r.nash_completeness != Completeness::Complete) os << "  [upper-bound estimate]";
  } else {
    os << "indeterminate (v_N unknown)";
  }
  os << "\n";
  os << "enforcement value (opt / v_C): " << r.enforcement.str();
  if (opts.with_float && !r.enforcement.is_infinite())
    os << " (~" << r.enforcement.finite_value().approx() << ")";
  os << "\n";
  return os.str();
}

inline std::string profile_to_text(const PureProfile& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

inline std::string mixed_to_text(const MixedProfile& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += " ";
    s += "(";
    for (std::size_t k = 0; k < p[i].size(); ++k) {
      if (k) s += ",";
      s += p[i][k].str();
    }
    s += ")";
  }
  return s;
}

inline std::string analysis_to_text(const Game& g, const Analysis& a,
                                    const RenderOptions& opts = {}) {
  std::ostringstream os;
  os << report_to_text(a.report, opts);
  os << "\nbest correlated equilibrium (surplus " << a.ce.value.str() << "):\n";
  for (const auto& [idx, w] : a.ce.mu.weights())
    os << "  mu" << profile_to_text(g.profile_of(idx)) << " = " << w.str() << "\n";
  os << "dual certificate: beta = " << a.ce.certificate.beta.str() << ", "
     << (verify_dual_certificate(g, a.ce.certificate) ? "verified" : "NOT FEASIBLE") << "\n";
  os << "\nNash equilibria found (" << a.nash.equilibria.size() << ", "
     << completeness_name(a.nash.completeness)
     << (a.nash.degenerate_flag ? ", degenerate" : "") << "):\n";
  for (const auto& e : a.nash.equilibria)
    os << "  " << mixed_to_text(e.profile) << "  surplus " << e.surplus.str() << "\n";
  return os.str();
}

}  // namespace gamevalue
