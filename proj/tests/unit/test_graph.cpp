#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nlgg/graph.hpp"
#include "support/graphgen.hpp"

using namespace nlgg;

TEST_CASE("named graph grammar") {
  Graph p4 = named_graph("P4");
  CHECK(p4.n == 4);
  CHECK(p4.edge_count() == 3);
  CHECK(named_graph("C3").edge_count() == 3);
  Graph star = named_graph("star-1,2,2");
  CHECK(star.n == 6);
  CHECK(star.edge_count() == 5);
  CHECK(is_tree(star));
  CHECK_THROWS_AS(named_graph("Q7"), std::invalid_argument);
  CHECK_THROWS_AS(named_graph("star-"), std::invalid_argument);
  CHECK_THROWS_AS(named_graph("T3:5"), std::invalid_argument);
  CHECK(is_isomorphic(named_graph("T2:0"), path_graph(4)));
}

TEST_CASE("line graphs") {
  CHECK(is_isomorphic(line_graph(path_graph(4)), path_graph(3)));
  CHECK(is_isomorphic(line_graph(cycle_graph(3)), cycle_graph(3)));
  Graph lg = line_graph(star_graph({1, 2, 2}));
  CHECK(lg.n == 5);
  // the three hub-incident edges form a triangle
  Graph expected(5);
  expected.add_edge(0, 1);
  expected.add_edge(0, 2);
  expected.add_edge(1, 2);
  expected.add_edge(1, 3);  // arm continuation
  expected.add_edge(2, 4);
  CHECK(is_isomorphic(lg, expected));
  Graph loopy(2);
  loopy.add_loop(0);
  CHECK_THROWS_AS(line_graph(loopy), std::invalid_argument);
}

TEST_CASE("homomorphism existence") {
  CHECK(homomorphism_exists(path_graph(3), path_graph(2)));
  CHECK_FALSE(homomorphism_exists(cycle_graph(3), path_graph(2)));
  Graph withloop(2);
  withloop.add_edge(0, 1);
  withloop.add_loop(0);
  CHECK(homomorphism_exists(cycle_graph(5), withloop));
  CHECK(homomorphism_exists(star_graph({1, 2, 2}), withloop));
  // empty target absorbs nothing
  CHECK_FALSE(homomorphism_exists(path_graph(2), Graph(3)));
}

TEST_CASE("homomorphism to an edge agrees with bipartiteness") {
  for (int n = 2; n <= 6; ++n)
    for (const auto &g : nlgg_test::connected_graphs_up_to_iso(n))
      CHECK(homomorphism_exists(g, path_graph(2)) == is_bipartite(g));
}

TEST_CASE("canonical code is permutation invariant") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + rng() % 6;
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) g.add_edge(u, v);
    if (rng() % 3 == 0) g.add_loop(rng() % n);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(n);
    for (auto [u, v] : g.edges) h.add_edge(perm[u], perm[v]);
    for (int v = 0; v < n; ++v)
      if (g.has_loop(v)) h.add_loop(perm[v]);
    CHECK(canonical_code(g) == canonical_code(h));
    CHECK(is_isomorphic(g, h));
  }
}

TEST_CASE("tree generation counts") {
  const int counts[] = {1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) CHECK(trees_up_to_iso(n).size() == size_t(counts[n - 1]));
}

TEST_CASE("tree perfect matchings") {
  CHECK(tree_has_perfect_matching(path_graph(2)));
  CHECK(tree_has_perfect_matching(path_graph(4)));
  CHECK_FALSE(tree_has_perfect_matching(path_graph(3)));
  CHECK_FALSE(tree_has_perfect_matching(star_graph({1, 1, 1})));  // K_{1,3}
  CHECK(tree_has_perfect_matching(star_graph({1, 2, 2})));
}

TEST_CASE("tree families T2 and T3") {
  auto t2 = enumerate_Tk(2);
  REQUIRE(t2.size() == 1);
  CHECK(is_isomorphic(t2[0], path_graph(4)));

  auto t3 = enumerate_Tk(3);
  REQUIRE(t3.size() == 2);
  bool has_p6 = false, has_star = false;
  for (const auto &g : t3) {
    has_p6 |= is_isomorphic(g, path_graph(6));
    has_star |= is_isomorphic(g, star_graph({1, 2, 2}));
  }
  CHECK(has_p6);
  CHECK(has_star);
}

TEST_CASE("tree family members are valid and distinct") {
  for (int k = 2; k <= 5; ++k) {
    auto members = enumerate_Tk(k);
    for (size_t i = 0; i < members.size(); ++i) {
      CHECK(is_in_some_Tk(members[i]));
      CHECK(members[i].n == 2 * k);
      for (size_t j = i + 1; j < members.size(); ++j)
        CHECK_FALSE(is_isomorphic(members[i], members[j]));
    }
  }
  CHECK_THROWS_AS(enumerate_Tk(7), std::length_error);
  CHECK_THROWS_AS(enumerate_Tk(1), std::invalid_argument);
}

TEST_CASE("membership predicate") {
  CHECK(is_in_some_Tk(path_graph(4)));
  CHECK(is_in_some_Tk(path_graph(2)));
  CHECK_FALSE(is_in_some_Tk(path_graph(5)));  // odd vertex count
  CHECK_FALSE(is_in_some_Tk(cycle_graph(6)));  // not a tree
  CHECK_FALSE(is_in_some_Tk(path_graph(3)));
}

TEST_CASE("graph json and edge list round trips") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_loop(3);
  Graph back = graph_from_json(graph_to_json(g));
  CHECK(back == g);
  Graph parsed = graph_from_edge_list("0 1\n1 2\n3 3\n");
  CHECK(parsed == g);
}
