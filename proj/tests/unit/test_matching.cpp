#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nlgg/matching.hpp"
#include "support/graphgen.hpp"

using namespace nlgg;

TEST_CASE("forced matchings") {
  auto m = fractional_perfect_matching(path_graph(2));
  REQUIRE(m.has_value());
  CHECK(m->weights.at({0, 1}) == 1);
  CHECK(m->satisfies_invariant(path_graph(2)));

  CHECK_FALSE(fractional_perfect_matching(path_graph(3)).has_value());

  auto c3 = fractional_perfect_matching(cycle_graph(3));
  REQUIRE(c3.has_value());
  for (const auto &[e, w] : c3->weights) CHECK(w == Rat(1, 2));
  CHECK(c3->satisfies_invariant(cycle_graph(3)));
}

TEST_CASE("p3 decompositions of small graphs") {
  auto c3 = fractional_p3_decomposition(cycle_graph(3));
  REQUIRE(c3.has_value());
  CHECK(c3->weights.size() == 3);
  for (const auto &[p, w] : c3->weights) CHECK(w == Rat(1, 2));
  CHECK(c3->satisfies_invariant(cycle_graph(3)));

  CHECK_FALSE(fractional_p3_decomposition(path_graph(4)).has_value());
  CHECK_FALSE(fractional_p3_decomposition(path_graph(2)).has_value());

  auto p5 = fractional_p3_decomposition(path_graph(5));
  REQUIRE(p5.has_value());
  CHECK(p5->satisfies_invariant(path_graph(5)));
  // forced weights 1, 0, 1 on the consecutive subpaths
  CHECK(p5->weights.at({1, 0, 2}) == 1);
  CHECK(p5->weights.count({2, 1, 3}) == 0);  // zero weight never stored
  CHECK(p5->weights.at({3, 2, 4}) == 1);

  CHECK_THROWS_AS(fractional_p3_decomposition(Graph(3)), std::invalid_argument);
}

TEST_CASE("returned certificates satisfy their invariants exactly") {
  for (int n = 2; n <= 6; ++n)
    for (const auto &g : nlgg_test::connected_graphs_up_to_iso(n)) {
      auto m = fractional_perfect_matching(g);
      if (m) CHECK(m->satisfies_invariant(g));
      auto d = fractional_p3_decomposition(g);
      if (d) CHECK(d->satisfies_invariant(g));
    }
}

TEST_CASE("decomposition exists exactly off the tree families") {
  for (int n = 1; n <= 6; ++n)
    for (const auto &g : nlgg_test::connected_graphs_up_to_iso(n)) {
      bool has = fractional_p3_decomposition(g).has_value();
      CHECK(has == !is_in_some_Tk(g));
    }
}
