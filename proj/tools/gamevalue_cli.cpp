// gamevalue: exact analysis of the value of correlation in finite
// nonnegative games.  See README.md for the file formats and examples.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gamevalue/gamevalue.hpp"

namespace gv = gamevalue;

namespace {

struct GlobalOptions {
  std::string format = "text";
  std::string out;
  bool with_float = false;
  std::uint64_t seed = 0;
};

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    gv::write_text_file(g.out, text);
}

// Input arguments accept a file path or a registry name, optionally with a
// parameter: "aumann", "pd:10", "gamma_x:7/2", "example2".
gv::Input resolve_input(const std::string& arg) {
  std::string name = arg, param;
  if (auto colon = arg.find(':'); colon != std::string::npos) {
    name = arg.substr(0, colon);
    param = arg.substr(colon + 1);
  }
  for (const char* known : {"aumann", "gamma_x", "pd", "example1", "example2"})
    if (name == known) {
      std::optional<gv::Rational> x;
      if (!param.empty()) x = gv::Rational::parse(param);
      return gv::example(name, x);
    }
  return gv::load_input(arg);
}

gv::Game input_game(const gv::Input& input) {
  if (std::holds_alternative<gv::Game>(input)) return std::get<gv::Game>(input);
  return gv::induce_game(std::get<gv::CongestionForm>(input));
}

int run_analyze(const GlobalOptions& g, const std::string& arg) {
  gv::Input input = resolve_input(arg);
  gv::Game game = input_game(input);
  gv::Analysis a = gv::analyze_game(game);
  gv::RenderOptions ropts{g.with_float};
  gv::Json j;
  std::string text;
  if (std::holds_alternative<gv::CongestionForm>(input)) {
    const auto& form = std::get<gv::CongestionForm>(input);
    j = gv::analysis_to_json(game, a, ropts);
    gv::Json cj;
    cj["symmetric"] = form.symmetric();
    cj["non_increasing"] = form.non_increasing();
    cj["linear"] = form.linear();
    gv::PureProfile eq = gv::best_response_equilibrium(form);
    cj["best_response_equilibrium"] = eq;
    cj["best_response_vector"] = gv::vector_of_profile(form, eq);
    std::string extra;
    if (form.symmetric()) {
      auto orbit = gv::optimal_uniform_orbit_ce(form);
      cj["uniform_orbit_ce_achieved"] = orbit.achieved;
      if (orbit.achieved) cj["uniform_orbit_vector"] = orbit.vector;
      extra += "uniform-orbit CE at maximal surplus: ";
      if (orbit.achieved)
        extra += "achieved, vector " + gv::profile_to_text(orbit.vector) + "\n";
      else if (form.non_increasing())
        extra += "not achieved, hence v_C < opt\n";
      else
        extra += "no uniform witness found (v_C from the LP decides: " +
                 a.report.ce_value.str() + " vs opt " + a.report.opt_value.str() + ")\n";
    }
    if (form.facility_count() == 2 && form.non_increasing() && form.linear()) {
      auto audit = gv::golden_ratio_bound_audit(form);
      cj["golden_ratio_audit"] = gv::Json{{"pass", audit.pass},
                                          {"v_C", audit.ce_value.str()},
                                          {"bound_base", audit.bound_base.str()},
                                          {"split", audit.split}};
      extra += std::string("golden-ratio bound audit: ") + (audit.pass ? "pass" : "FAIL") +
               " (v_C = " + audit.ce_value.str() + ", base = " + audit.bound_base.str() + ")\n";
    }
    j["congestion"] = std::move(cj);
    text = gv::analysis_to_text(game, a, ropts) + "\n" + extra;
  } else {
    j = gv::analysis_to_json(game, a, ropts);
    text = gv::analysis_to_text(game, a, ropts);
  }
  emit(g, g.format == "json" ? gv::dump_canonical(j) : text);
  return a.report.mediation ? 0 : 1;
}

int run_nash(const GlobalOptions& g, const std::string& arg) {
  gv::Game game = input_game(resolve_input(arg));
  gv::Json j;
  std::string text;
  if (game.player_count() == 2) {
    gv::NashSet set = gv::support_enumeration_2p(game);
    gv::Json arr = gv::Json::array();
    std::ostringstream os;
    os << "Nash equilibria (" << gv::completeness_name(set.completeness)
       << (set.degenerate_flag ? ", degenerate" : "") << "):\n";
    for (const auto& e : set.equilibria) {
      arr.push_back(gv::Json{{"profile", gv::mixed_to_json(e.profile)},
                             {"surplus", e.surplus.str()}});
      os << "  " << gv::mixed_to_text(e.profile) << "  surplus " << e.surplus.str() << "\n";
    }
    j["equilibria"] = std::move(arr);
    j["completeness"] = gv::completeness_name(set.completeness);
    j["degenerate"] = set.degenerate_flag;
    gv::NashValue vn = gv::nash_value(game);
    if (vn.value) {
      j["v_N"] = vn.value->str();
      os << "v_N = " << vn.value->str() << "\n";
    }
    text = os.str();
  } else {
    auto pure = gv::pure_nash(game);
    gv::Json arr = gv::Json::array();
    std::ostringstream os;
    os << "pure Nash equilibria (" << pure.size() << "):\n";
    for (const auto& prof : pure) {
      arr.push_back(gv::Json{{"profile", prof},
                             {"surplus", game.profile_surplus(game.index_of(prof)).str()}});
      os << "  " << gv::profile_to_text(prof) << "  surplus "
         << game.profile_surplus(game.index_of(prof)).str() << "\n";
    }
    j["pure_equilibria"] = std::move(arr);
    gv::NashValue vn = gv::nash_value(game);
    j["completeness"] = gv::completeness_name(vn.completeness);
    if (vn.value) {
      j["v_N"] = vn.value->str();
      os << "v_N >= " << vn.value->str() << " (" << gv::completeness_name(vn.completeness)
         << ")\n";
    } else {
      j["v_N"] = "unknown";
      os << "v_N unknown (no pure equilibrium; enumeration incomplete)\n";
    }
    text = os.str();
  }
  emit(g, g.format == "json" ? gv::dump_canonical(j) : text);
  return j.contains("v_N") && j["v_N"] == "unknown" ? 1 : 0;
}

int run_ce(const GlobalOptions& g, const std::string& arg) {
  gv::Game game = input_game(resolve_input(arg));
  gv::CeSolution sol = gv::max_surplus_ce(game);
  gv::Json j;
  j["v_C"] = sol.value.str();
  j["mu"] = gv::correlated_to_json(game, sol.mu);
  j["certificate"] = gv::certificate_to_json(game, sol.certificate);
  std::ostringstream os;
  os << "v_C = " << sol.value.str() << "\n";
  for (const auto& [idx, w] : sol.mu.weights())
    os << "  mu" << gv::profile_to_text(game.profile_of(idx)) << " = " << w.str() << "\n";
  os << "dual certificate beta = " << sol.certificate.beta.str() << ", "
     << (gv::verify_dual_certificate(game, sol.certificate) ? "verified" : "NOT FEASIBLE")
     << "\n";
  emit(g, g.format == "json" ? gv::dump_canonical(j) : os.str());
  return 0;
}

int run_congestion(const GlobalOptions& g, const std::string& arg, bool do_induce,
                   bool do_rosenthal, bool do_orbit, bool do_phi, bool do_concave,
                   bool do_splits) {
  gv::Input input = resolve_input(arg);
  if (!std::holds_alternative<gv::CongestionForm>(input))
    throw gv::DomainError("the congestion command needs a congestion form input");
  const auto& form = std::get<gv::CongestionForm>(input);
  gv::Json j;
  std::ostringstream os;
  j["players"] = form.player_count();
  j["facilities"] = form.facility_count();
  j["symmetric"] = form.symmetric();
  j["non_increasing"] = form.non_increasing();
  j["linear"] = form.linear();
  os << "form: " << form.player_count() << " players, " << form.facility_count()
     << " facilities" << (form.symmetric() ? ", symmetric" : "")
     << (form.non_increasing() ? ", non-increasing" : "") << (form.linear() ? ", linear" : "")
     << "\n";
  if (do_induce) {
    j["game"] = gv::game_to_json(gv::induce_game(form));
    os << "induced game written to the json output\n";
  }
  if (do_rosenthal) {
    auto run = gv::best_response_equilibrium_run(form);
    j["best_response"] = gv::Json{{"profile", run.profile},
                                  {"vector", gv::vector_of_profile(form, run.profile)},
                                  {"moves", run.moves}};
    os << "best-response equilibrium: " << gv::profile_to_text(run.profile) << " (vector "
       << gv::profile_to_text(gv::vector_of_profile(form, run.profile)) << ", " << run.moves
       << " moves)\n";
  }
  if (do_orbit) {
    auto orbit = gv::optimal_uniform_orbit_ce(form);
    j["uniform_orbit_ce"] = gv::Json{{"achieved", orbit.achieved}};
    if (orbit.achieved) {
      j["uniform_orbit_ce"]["vector"] = orbit.vector;
      os << "uniform-orbit CE at maximal surplus: achieved, vector "
         << gv::profile_to_text(orbit.vector) << "\n";
    } else {
      os << "uniform-orbit CE at maximal surplus: "
         << (form.non_increasing() ? "not achieved, hence v_C < opt"
                                   : "no uniform witness found")
         << "\n";
    }
  }
  if (do_phi) {
    auto audit = gv::golden_ratio_bound_audit(form);
    j["golden_ratio_audit"] = gv::Json{{"pass", audit.pass},
                                       {"v_C", audit.ce_value.str()},
                                       {"bound_base", audit.bound_base.str()},
                                       {"split", audit.split},
                                       {"mixed_split_used", audit.mixed_split_used}};
    os << "golden-ratio bound audit: " << (audit.pass ? "pass" : "FAIL")
       << " (v_C = " << audit.ce_value.str() << ", base = " << audit.bound_base.str()
       << ", s = " << audit.split << ")\n";
  }
  if (do_concave) {
    auto check = gv::concave_optimal_equilibrium(form);
    const char* name = check.outcome == gv::ConcaveOutcome::OptimalEquilibrium
                           ? "optimal-equilibrium"
                           : check.outcome == gv::ConcaveOutcome::NotConcave ? "not-concave"
                                                                             : "VIOLATION";
    j["concavity_check"] = gv::Json{{"outcome", name}};
    os << "concavity check: " << name;
    if (check.witness) {
      j["concavity_check"]["witness"] = *check.witness;
      os << " at " << gv::profile_to_text(*check.witness);
    }
    os << "\n";
  }
  if (do_splits) {
    int s = gv::largest_equilibrium_split(form);
    j["largest_equilibrium_split"] = s;
    j["split_surpluses_monotone"] = gv::split_surplus_monotone(form);
    os << "largest equilibrium split s = " << s << ", surpluses monotone up to s: "
       << (gv::split_surplus_monotone(form) ? "yes" : "no") << "\n";
    gv::Json arr = gv::Json::array();
    for (int k = 2; k <= form.player_count(); ++k) {
      if (auto p = gv::mixed_split_probability(form, k)) {
        arr.push_back(gv::Json{{"k", k},
                               {"p_k", p->str()},
                               {"surplus", gv::mixed_split_surplus_formula(form, k)->str()}});
        os << "mixed split k=" << k << ": p_k = " << p->str() << ", surplus "
           << gv::mixed_split_surplus_formula(form, k)->str() << "\n";
      }
    }
    j["mixed_splits"] = std::move(arr);
  }
  emit(g, g.format == "json" ? gv::dump_canonical(j) : os.str());
  return 0;
}

int run_example(const GlobalOptions& g, const std::string& name,
                const std::string& param) {
  std::optional<gv::Rational> x;
  if (!param.empty()) x = gv::Rational::parse(param);
  gv::Input input = gv::example(name, x);
  gv::Json j = std::holds_alternative<gv::Game>(input)
                   ? gv::game_to_json(std::get<gv::Game>(input))
                   : gv::form_to_json(std::get<gv::CongestionForm>(input));
  emit(g, gv::dump_canonical(j));
  return 0;
}

gv::SearchConfig parse_search_class(gv::SearchConfig cfg, const std::string& spec) {
  // "2x3" for general games; "S:3x2", "SN:3x2", "I:6x2", "IN:4x2" for
  // congestion classes, with an optional ":linear" suffix.
  auto parse_dims = [](const std::string& s) {
    std::vector<int> dims;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t x = s.find('x', pos);
      std::string piece = s.substr(pos, x == std::string::npos ? x : x - pos);
      dims.push_back(std::stoi(piece));
      if (x == std::string::npos) break;
      pos = x + 1;
    }
    return dims;
  };
  std::string body = spec;
  if (body.size() > 7 && body.substr(body.size() - 7) == ":linear") {
    cfg.linear = true;
    body = body.substr(0, body.size() - 7);
  }
  auto colon = body.find(':');
  if (colon == std::string::npos) {
    cfg.game_class = gv::SearchClass::General;
    cfg.strategy_counts = parse_dims(body);
    return cfg;
  }
  std::string klass = body.substr(0, colon);
  std::vector<int> dims = parse_dims(body.substr(colon + 1));
  if (dims.size() != 2) throw gv::DomainError("congestion class needs players x facilities");
  cfg.players = dims[0];
  cfg.facilities = dims[1];
  if (klass == "S")
    cfg.game_class = gv::SearchClass::CongestionS;
  else if (klass == "SN")
    cfg.game_class = gv::SearchClass::CongestionSN;
  else if (klass == "I")
    cfg.game_class = gv::SearchClass::CongestionI;
  else if (klass == "IN")
    cfg.game_class = gv::SearchClass::CongestionIN;
  else
    throw gv::DomainError("unknown class '" + klass + "' (use S, SN, I or IN)");
  return cfg;
}

std::vector<gv::Rational> parse_grid(const std::string& spec) {
  // "0..10" or a comma list "0,1,3/2,2".
  std::vector<gv::Rational> grid;
  if (auto dots = spec.find(".."); dots != std::string::npos) {
    long long lo = std::stoll(spec.substr(0, dots));
    long long hi = std::stoll(spec.substr(dots + 2));
    for (long long v = lo; v <= hi; ++v) grid.push_back(gv::Rational(v));
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string piece = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!piece.empty()) grid.push_back(gv::Rational::parse(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return grid;
}

int run_search(const GlobalOptions& g, gv::SearchConfig cfg) {
  gv::SearchResult res = gv::witness_search(cfg);
  gv::Json j;
  j["evaluated"] = res.evaluated;
  j["filtered_dominance"] = res.filtered_dominance;
  j["indeterminate"] = res.indeterminate;
  j["threshold"] = cfg.threshold.str();
  j["threshold_met"] = res.threshold_met;
  std::ostringstream os;
  if (res.found) {
    j["best_value"] = res.best_value.str();
    j["best_iteration"] = res.best_iteration;
    j["best_game"] = gv::game_to_json(*res.best_game);
    if (res.best_form) j["best_form"] = gv::form_to_json(*res.best_form);
    j["best_report"] = gv::report_to_json(res.best_report, gv::RenderOptions{g.with_float});
    os << "best " << (cfg.target == gv::SearchTarget::Mediation ? "MV" : "EV") << " = "
       << res.best_value.str() << " at iteration " << res.best_iteration << " of "
       << cfg.iterations << "\n"
       << "threshold " << cfg.threshold.str() << ": "
       << (res.threshold_met ? "met" : "not met (inconclusive, not a refutation)") << "\n"
       << "best game:\n"
       << gv::dump_canonical(gv::game_to_json(*res.best_game)) << "report:\n"
       << gv::report_to_text(res.best_report, gv::RenderOptions{g.with_float});
  } else {
    j["best_value"] = "none";
    os << "no evaluable game sampled\n";
  }
  emit(g, g.format == "json" ? gv::dump_canonical(j) : os.str());
  return res.found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mediation/enforcement-value analysis of nonnegative games"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags remain usable after a subcommand name
  GlobalOptions g;
  if (const char* env = std::getenv("GAMEVALUE_SEED")) g.seed = std::strtoull(env, nullptr, 10);
  app.add_option("--format", g.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", g.out, "write output to a file instead of stdout");
  app.add_flag("--float", g.with_float, "add approximate decimals (marked approximate)");
  app.add_option("--seed", g.seed, "64-bit seed (default: GAMEVALUE_SEED or 0)");

  std::string input, example_name, example_param, class_spec = "2x2", grid_spec = "0..10",
                                                  target = "mv", threshold = "0";
  long long iterations = 1000;
  bool allow_partial = false, no_dominance = false;
  bool c_induce = false, c_rosenthal = false, c_orbit = false, c_phi = false,
       c_concave = false, c_splits = false;

  auto* analyze = app.add_subcommand("analyze", "full value report for a game or form");
  analyze->add_option("input", input, "file path or example name (e.g. aumann, pd:10)")
      ->required();
  auto* nash = app.add_subcommand("nash", "Nash equilibria and v_N");
  nash->add_option("input", input)->required();
  auto* ce = app.add_subcommand("ce", "maximal-surplus correlated equilibrium and certificate");
  ce->add_option("input", input)->required();
  auto* congestion = app.add_subcommand("congestion", "congestion-form analyses");
  congestion->add_option("input", input)->required();
  congestion->add_flag("--induce", c_induce, "emit the induced strategic-form game (json)");
  congestion->add_flag("--rosenthal", c_rosenthal, "pure equilibrium by best-response dynamics");
  congestion->add_flag("--orbit-ce", c_orbit,
                       "search uniform-over-orbit CEs at the maximal surplus (symmetric forms)");
  congestion->add_flag("--phi-audit", c_phi,
                       "golden-ratio bound audit (linear non-increasing two-facility forms)");
  congestion->add_flag("--concave", c_concave,
                       "concavity check for symmetric forms: optimal pure equilibrium");
  congestion->add_flag("--splits", c_splits,
                       "two-facility split analysis: largest equilibrium split, mixed splits");
  auto* example_cmd = app.add_subcommand("example", "emit a built-in example as json");
  example_cmd->add_option("name", example_name, "aumann | gamma_x | pd | example1 | example2")
      ->required();
  example_cmd->add_option("-x,--param", example_param, "parameter for gamma_x / pd");
  auto* search = app.add_subcommand("search", "seeded random scan for high-MV/EV games");
  search->add_option("--class", class_spec,
                     "game class: e.g. 2x3, or S:3x2, SN:3x2, I:6x2, IN:4x2[:linear]");
  search->add_option("--grid", grid_spec, "payoff grid: 0..10 or 0,1,3/2,2");
  search->add_option("--iterations", iterations, "number of sampled games");
  search->add_option("--target", target, "mv or ev")->check(CLI::IsMember({"mv", "ev"}));
  search->add_option("--threshold", threshold, "report whether best strictly exceeds this");
  search->add_flag("--allow-partial", allow_partial,
                   "accept MV estimates from incomplete v_N (more than two players)");
  search->add_flag("--no-strict-dominance", no_dominance,
                   "skip games where some player has a strictly dominant strategy");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(g, input);
    if (nash->parsed()) return run_nash(g, input);
    if (ce->parsed()) return run_ce(g, input);
    if (congestion->parsed())
      return run_congestion(g, input, c_induce, c_rosenthal, c_orbit, c_phi, c_concave,
                            c_splits);
    if (example_cmd->parsed()) return run_example(g, example_name, example_param);
    if (search->parsed()) {
      gv::SearchConfig cfg;
      cfg = parse_search_class(cfg, class_spec);
      cfg.grid = parse_grid(grid_spec);
      cfg.seed = g.seed;
      cfg.iterations = iterations;
      cfg.target = target == "ev" ? gv::SearchTarget::Enforcement : gv::SearchTarget::Mediation;
      cfg.threshold = gv::Rational::parse(threshold);
      cfg.allow_partial = allow_partial;
      cfg.exclude_strict_dominance = no_dominance;
      return run_search(g, cfg);
    }
  } catch (const gv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
