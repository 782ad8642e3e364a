#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nlgg/classical.hpp"
#include "support/graphgen.hpp"

using namespace nlgg;

TEST_CASE("classical values of the named games") {
  CHECK(classical_value(make_chsh()) == Rat(3, 4));
  CHECK(classical_value(make_odd_cycle(3)) == Rat(5, 6));
  CHECK(classical_value(make_odd_cycle(5)) == Rat(9, 10));
  CHECK(classical_value(make_odd_cycle(7)) == Rat(13, 14));
  CHECK(classical_value(make_always_win()) == 1);
  CHECK(classical_value(make_always_lose()) == 0);
  CHECK(classical_value(make_anticorrelation()) == 1);
}

TEST_CASE("search caps") {
  ClassicalOptions tight;
  tight.max_candidates = 10;
  CHECK_THROWS_AS(classical_value(make_magic_square(), tight), CapacityError);
  CHECK_THROWS_AS(strategy_graph(make_magic_square()), CapacityError);
  CHECK_THROWS_AS(classical_value_on_graph(make_magic_square(), path_graph(3)), CapacityError);
}

TEST_CASE("chsh strategy graph is a path with loops at the constant ends") {
  Graph sg = strategy_graph(make_chsh());
  REQUIRE(sg.n == 4);
  Graph expected(4);
  expected.add_edge(0, 1);
  expected.add_edge(1, 2);
  expected.add_edge(2, 3);
  expected.add_loop(0);
  expected.add_loop(3);
  CHECK(is_isomorphic(sg, expected));
  // the loops sit on the two constant functions (indices 0 and 3)
  CHECK(sg.has_loop(0));
  CHECK(sg.has_loop(3));
}

TEST_CASE("anticorrelation strategy graph is a single bare edge") {
  Graph sg = strategy_graph(make_anticorrelation());
  REQUIRE(sg.n == 2);
  CHECK(sg.edge_count() == 1);
  CHECK_FALSE(sg.any_loop());
}

TEST_CASE("always-win strategy graph is complete with loops") {
  Graph sg = strategy_graph(make_always_win());
  CHECK(sg.n == 1);
  CHECK(sg.has_loop(0));
}

TEST_CASE("graph values") {
  CHECK(classical_value_on_graph(make_chsh(), path_graph(3)) == Rat(3, 4));
  CHECK(classical_value_on_graph(make_chsh(), path_graph(4)) == Rat(3, 4));
  CHECK(classical_value_on_graph(make_chsh(), cycle_graph(3)) == Rat(3, 4));
  CHECK(classical_value_on_graph(make_anticorrelation(), cycle_graph(3)) == Rat(2, 3));
}

TEST_CASE("lemma-1 style reports on known cases") {
  auto r1 = verify_lemma1(make_chsh(), cycle_graph(3));
  CHECK(r1.omega_classical == r1.omega_graph);
  CHECK(r1.hom_exists);
  CHECK(r1.consistent);

  auto r2 = verify_lemma1(make_anticorrelation(), cycle_graph(3));
  CHECK(r2.omega_classical != r2.omega_graph);
  CHECK_FALSE(r2.hom_exists);
  CHECK(r2.consistent);

  auto r3 = verify_lemma1(make_chsh(), path_graph(2));
  CHECK(r3.omega_classical == r3.omega_graph);
  CHECK(r3.consistent);

  auto j = lemma1_report_to_json(r2);
  CHECK(j["omega_classical"] == "1");
  CHECK(j["omega_graph"] == "2/3");
  CHECK(j["hom_exists"] == false);
  CHECK(j["lemma1_consistent"] == true);
}

TEST_CASE("graph value never exceeds the two-player value") {
  std::mt19937 rng(3);
  auto graphs = nlgg_test::connected_graphs_up_to_iso(4);
  for (int trial = 0; trial < 25; ++trial) {
    int nq = 1 + rng() % 2, na = 1 + rng() % 2;
    Game g(nq, na, "rand");
    for (int x1 = 0; x1 < nq; ++x1)
      for (int x2 = x1; x2 < nq; ++x2)
        for (int a1 = 0; a1 < na; ++a1)
          for (int a2 = 0; a2 < na; ++a2) {
            if (x1 == x2 && a2 < a1) continue;
            g.set_entry(x1, x2, a1, a2, rng() % 2);
          }
    Rat omega = classical_value(g);
    for (const auto &h : graphs)
      if (h.n >= 2) CHECK(classical_value_on_graph(g, h) <= omega);
  }
}

TEST_CASE("weighted search agrees with direct enumeration on the odd cycle") {
  // independent oracle: enumerate both players' functions directly
  Game g = make_odd_cycle(3);
  Rat best = 0;
  for (int fa = 0; fa < 8; ++fa)
    for (int fb = 0; fb < 8; ++fb) {
      Rat v = 0;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          if (g.eval(x, y, (fa >> x) & 1, (fb >> y) & 1)) v += g.weight(x, y);
      best = std::max(best, v);
    }
  CHECK(best == classical_value(g));
}
