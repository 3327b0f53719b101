#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace gamevalue;

namespace {

CorrelatedStrategy aumann_third(const Game& g) {
  return CorrelatedStrategy::uniform_over(g, {{0, 0}, {1, 0}, {1, 1}});
}

}  // namespace

TEST_CASE("deviation gains of the Aumann distributions") {
  Game g = gvt::aumann();
  CorrelatedStrategy third = aumann_third(g);
  RegretTable table = regret_table(g, third);
  CHECK(table.entry(0, 1, 0) == 0);  // recommended a2, deviating to a1: indifferent
  CHECK(table.entry(0, 0, 1) < 0);
  CHECK(table.max_entry() == 0);
  for (int i = 0; i < 2; ++i)
    for (int s = 0; s < 2; ++s)
      CHECK(table.entry(i, s, 1 - s) == gvt::oracle_deviation_gain(g, third, i, s, 1 - s));

  // a point mass on a pure equilibrium has no profitable deviation
  RegretTable pure = regret_table(g, CorrelatedStrategy::point_mass(g, {0, 0}));
  CHECK(pure.max_entry() <= 0);

  // uniform over all four profiles is the product of the half-half mixed
  // equilibrium, so every deviation gain is exactly zero
  CorrelatedStrategy uniform4(g.strategy_counts());
  for (std::size_t idx = 0; idx < 4; ++idx) uniform4.set(idx, Rational(1, 4));
  RegretTable u4 = regret_table(g, uniform4);
  for (int i = 0; i < 2; ++i)
    for (int s = 0; s < 2; ++s) CHECK(u4.entry(i, s, 1 - s) == 0);
  CHECK(is_correlated_equilibrium(g, uniform4));
}

TEST_CASE("correlated equilibrium tests on the named distributions") {
  Game g = gvt::aumann();
  CHECK(is_correlated_equilibrium(g, aumann_third(g)));

  CongestionForm f = gvt::example2();
  Game game = induce_game(f);
  auto xi1 = CorrelatedStrategy::uniform_over(game, orbit_profiles(f, {3, 3}));
  auto xi2 = CorrelatedStrategy::uniform_over(game, orbit_profiles(f, {1, 5}));
  CHECK_FALSE(is_correlated_equilibrium(game, xi1));
  CHECK(is_correlated_equilibrium(game, xi2));
  CHECK(gvt::oracle_is_ce(game, xi2));
  CHECK_FALSE(gvt::oracle_is_ce(game, xi1));
}

TEST_CASE("max-surplus correlated equilibria with certificates") {
  Game g = gvt::aumann();
  CeSolution sol = max_surplus_ce(g);
  CHECK(sol.value == Rational(20, 3));
  CHECK(surplus(g, sol.mu) == sol.value);
  CHECK(is_correlated_equilibrium(g, sol.mu));
  CHECK(verify_dual_certificate(g, sol.certificate));
  CHECK(sol.certificate.beta == sol.value);

  CeSolution g4 = max_surplus_ce(gvt::gamma_x(Rational(4)));
  CHECK(g4.value == Rational(16, 3));

  Game tiny({1, 1}, {{Rational(3)}, {Rational(2)}});
  CeSolution t = max_surplus_ce(tiny);
  CHECK(t.value == 5);
  CHECK(t.mu.weight(0) == 1);
}

TEST_CASE("dual certificates verify independently") {
  Game g = gvt::aumann();
  DualCertificate cert(g.strategy_counts());
  cert.beta = opt(g);  // all-zero alpha: constraints reduce to beta >= u(s)
  CHECK(verify_dual_certificate(g, cert));
  cert.beta = opt(g) - 1;  // violated at the unique argmax (a2, b1)
  CHECK_FALSE(verify_dual_certificate(g, cert));
  DualCertificate wrong({3, 2});
  CHECK_THROWS_AS(verify_dual_certificate(g, wrong), DimensionError);
}

TEST_CASE("pure equilibria of the named games") {
  Game g = gvt::aumann();
  CHECK(pure_nash(g) == std::vector<PureProfile>{{0, 0}, {1, 1}});

  Game e1 = induce_game(gvt::example1());
  std::vector<PureProfile> expected{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  CHECK(pure_nash(e1) == expected);
  for (const auto& prof : expected) CHECK(e1.profile_surplus(e1.index_of(prof)) == 32);

  CHECK(pure_nash(gvt::pd(Rational(5))) == std::vector<PureProfile>{{1, 1}});
}

TEST_CASE("support enumeration on Aumann's game") {
  Game g = gvt::aumann();
  NashSet set = support_enumeration_2p(g);
  CHECK(set.completeness == Completeness::Complete);
  CHECK_FALSE(set.degenerate_flag);
  REQUIRE(set.equilibria.size() == 3);
  bool has_mixed = false;
  for (const auto& e : set.equilibria) {
    if (e.profile == MixedProfile{{Rational(1, 2), Rational(1, 2)},
                                  {Rational(1, 2), Rational(1, 2)}}) {
      has_mixed = true;
      CHECK(e.surplus == 5);
    } else {
      CHECK(e.surplus == 6);
    }
  }
  CHECK(has_mixed);
  CHECK_THROWS_AS(support_enumeration_2p(induce_game(gvt::example1())), DomainError);
}

TEST_CASE("support enumeration on the figure-one family") {
  NashSet set = support_enumeration_2p(gvt::gamma_x(Rational(4)));
  CHECK(set.completeness == Completeness::Complete);
  bool found = false;
  for (const auto& e : set.equilibria)
    if (e.profile == MixedProfile{{Rational(1, 2), Rational(1, 2)},
                                  {Rational(1, 2), Rational(1, 2)}}) {
      found = true;
      CHECK(e.surplus == 4);  // the mixed equilibrium yields x
    }
  CHECK(found);
}

TEST_CASE("a constant game is flagged degenerate") {
  Game g({2, 2}, {std::vector<Rational>(4, Rational(1)), std::vector<Rational>(4, Rational(1))});
  NashSet set = support_enumeration_2p(g);
  CHECK(set.degenerate_flag);
  CHECK(set.completeness == Completeness::Partial);
  CHECK_FALSE(set.equilibria.empty());
  for (const auto& e : set.equilibria) CHECK(e.surplus == 2);
}

TEST_CASE("best regret certifies equilibria") {
  Game g = gvt::aumann();
  CHECK(best_regret(g, pure_as_mixed(g, {0, 0})) == 0);
  CHECK(best_regret(g, MixedProfile{{Rational(1, 2), Rational(1, 2)},
                                    {Rational(1, 2), Rational(1, 2)}}) == 0);
  CHECK(best_regret(g, pure_as_mixed(g, {1, 0})) > 0);

  // all six players on one facility: moving to the empty one pays 1.5 < 3,
  // so this is a pure equilibrium (and (6,0) an equilibrium vector)
  CongestionForm f = gvt::example2();
  Game game = induce_game(f);
  MixedProfile all_one = pure_as_mixed(game, PureProfile(6, 0));
  CHECK(best_regret(game, all_one) == 0);
  CHECK(gvt::oracle_best_regret(game, all_one) == 0);
  CHECK(vector_in_equilibrium(f, {6, 0}));
}

TEST_CASE("nash values with completeness flags") {
  NashValue a = nash_value(gvt::aumann());
  CHECK(a.value == Rational(6));
  CHECK(a.completeness == Completeness::Complete);

  NashValue e1 = nash_value(induce_game(gvt::example1()));
  CHECK(e1.value == Rational(32));
  CHECK(e1.completeness == Completeness::PureOnly);

  NashValue g4 = nash_value(gvt::gamma_x(Rational(4)));
  CHECK(g4.value == Rational(5));
  CHECK(g4.completeness == Completeness::Complete);

  // candidates are verified before they count
  Game game = induce_game(gvt::example1());
  MixedProfile bogus(3, {Rational(1, 2), Rational(1, 2)});
  MixedProfile pure_eq = pure_as_mixed(game, {0, 0, 1});
  NashValue with = nash_value(game, {bogus, pure_eq});
  CHECK(with.value == Rational(32));
  CHECK(with.completeness == Completeness::Partial);

  // no pure equilibrium and no candidates: value stays unknown, never 0
  Game cyc = Game::from_function({2, 2, 2}, [](int i, const PureProfile& s) {
    // three-player cyclic matching: player i wants to mismatch player i+1
    int target = s[static_cast<std::size_t>((i + 1) % 3)];
    return Rational(s[static_cast<std::size_t>(i)] != target ? 1 : 0);
  });
  CHECK(pure_nash(cyc).empty());
  NashValue unknown = nash_value(cyc);
  CHECK_FALSE(unknown.value.has_value());
  CHECK(unknown.completeness == Completeness::PureOnly);
}

TEST_CASE("random games: equilibria are correlated equilibria and values sandwich") {
  gvt::Rng r(333);
  auto grid = gvt::default_grid();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> counts = trial % 3 == 2 ? std::vector<int>{3, 3} : std::vector<int>{2, 3};
    Game g = gvt::random_game(r, counts, grid);
    NashSet set = support_enumeration_2p(g);
    CeSolution ce = max_surplus_ce(g);
    CHECK(verify_dual_certificate(g, ce.certificate));
    CHECK(ce.certificate.beta == ce.value);
    REQUIRE_FALSE(set.equilibria.empty());
    Rational vn;
    for (const auto& e : set.equilibria) {
      CHECK(is_correlated_equilibrium(g, product_distribution(g, e.profile)));
      CHECK(best_regret(g, e.profile) == 0);
      if (e.surplus > vn) vn = e.surplus;
    }
    CHECK(vn <= ce.value);
    CHECK(ce.value <= opt(g));
  }
}

TEST_CASE("regret consistency on random mixed profiles") {
  gvt::Rng r(44);
  auto grid = gvt::default_grid();
  for (int trial = 0; trial < 40; ++trial) {
    Game g = gvt::random_game(r, {2, 2}, grid);
    MixedProfile p = gvt::random_mixed(r, g);
    bool ce = is_correlated_equilibrium(g, product_distribution(g, p));
    CHECK(ce == (best_regret(g, p) == 0));
    CHECK(best_regret(g, p) == gvt::oracle_best_regret(g, p));
  }
}
