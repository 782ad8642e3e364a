#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nlgg/graph.hpp"
#include "nlgg/rational.hpp"
#include "nlgg/simplex.hpp"

namespace nlgg {

// Nonnegative edge weights summing to exactly 1 at every vertex.
struct Matching {
  std::map<std::pair<int, int>, Rat> weights;

  bool satisfies_invariant(const Graph &g) const {
    std::vector<Rat> sums(g.n, Rat(0));
    for (const auto &[e, w] : weights) {
      if (w < 0 || w > 1) return false;
      sums[e.first] += w;
      if (e.first != e.second) sums[e.second] += w;
    }
    for (int v = 0; v < g.n; ++v)
      if (sums[v] != 1) return false;
    return true;
  }
};

// P3 subgraph keyed as (center, leaf1 < leaf2); nonnegative weights covering
// every host edge with total weight exactly 1.
struct P3Subgraph {
  int center, leaf1, leaf2;
  bool operator<(const P3Subgraph &o) const {
    return std::tie(center, leaf1, leaf2) < std::tie(o.center, o.leaf1, o.leaf2);
  }
};

struct P3Decomposition {
  std::map<P3Subgraph, Rat> weights;

  bool satisfies_invariant(const Graph &g) const {
    std::map<std::pair<int, int>, Rat> edge_sum;
    for (const auto &[p, w] : weights) {
      if (w < 0 || w > 1) return false;
      auto e1 = std::minmax(p.center, p.leaf1);
      auto e2 = std::minmax(p.center, p.leaf2);
      edge_sum[{e1.first, e1.second}] += w;
      edge_sum[{e2.first, e2.second}] += w;
    }
    for (auto [u, v] : g.edges)
      if (edge_sum[{u, v}] != 1) return false;
    return true;
  }
};

// Exact LP feasibility: one constraint per vertex, one variable per edge.
inline std::optional<Matching> fractional_perfect_matching(const Graph &g) {
  int m = g.edge_count();
  int nloops = 0;
  for (int v = 0; v < g.n; ++v)
    if (g.has_loop(v)) nloops++;
  std::vector<std::pair<int, int>> vars(g.edges);
  for (int v = 0; v < g.n; ++v)
    if (g.has_loop(v)) vars.emplace_back(v, v);
  (void)m;
  (void)nloops;

  std::vector<std::vector<Rat>> a(g.n, std::vector<Rat>(vars.size(), Rat(0)));
  std::vector<Rat> b(g.n, Rat(1));
  for (size_t j = 0; j < vars.size(); ++j) {
    a[vars[j].first][j] += 1;
    if (vars[j].second != vars[j].first) a[vars[j].second][j] += 1;
  }
  auto x = solve_equality_feasibility(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  Matching out;
  for (size_t j = 0; j < vars.size(); ++j)
    if ((*x)[j] != 0) out.weights[vars[j]] = (*x)[j];
  return out;
}

inline std::vector<P3Subgraph> p3_subgraphs(const Graph &g) {
  auto adj = g.adjacency_lists();
  std::vector<P3Subgraph> out;
  for (int c = 0; c < g.n; ++c) {
    auto &nb = adj[c];
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        int a = std::min(nb[i], nb[j]), b = std::max(nb[i], nb[j]);
        out.push_back({c, a, b});
      }
  }
  return out;
}

// A decomposition exists iff the line graph has a fractional perfect
// matching; the weights pull back through the edge/vertex correspondence.
inline std::optional<P3Decomposition> fractional_p3_decomposition(const Graph &g) {
  if (g.any_loop())
    throw std::invalid_argument("fractional_p3_decomposition requires a loop-free graph");
  if (!is_connected(g))
    throw std::invalid_argument("fractional_p3_decomposition requires a connected graph");
  if (g.edge_count() == 0) return P3Decomposition{};

  Graph lg = line_graph(g);
  auto matching = fractional_perfect_matching(lg);
  if (!matching) return std::nullopt;

  P3Decomposition out;
  for (const auto &[le, w] : matching->weights) {
    auto [a, b] = g.edges[le.first];
    auto [c, d] = g.edges[le.second];
    int center, l1, l2;
    if (a == c) {
      center = a;
      l1 = b;
      l2 = d;
    } else if (a == d) {
      center = a;
      l1 = b;
      l2 = c;
    } else if (b == c) {
      center = b;
      l1 = a;
      l2 = d;
    } else {
      center = b;
      l1 = a;
      l2 = c;
    }
    if (l1 > l2) std::swap(l1, l2);
    out.weights[{center, l1, l2}] += w;
  }
  return out;
}

}  // namespace nlgg
