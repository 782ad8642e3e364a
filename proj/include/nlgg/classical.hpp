#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "json.hpp"
#include "nlgg/game.hpp"
#include "nlgg/graph.hpp"
#include "nlgg/rational.hpp"

namespace nlgg {

struct ClassicalOptions {
  // Cap on the number of candidate deterministic functions (or assignments)
  // the exhaustive search may touch.
  long long max_candidates = 1'000'000'000;
};

namespace detail {

// Question weights scaled to integers; scale = common denominator.
struct ScaledWeights {
  std::vector<int64_t> w;  // nq*nq
  int64_t scale;
};

inline ScaledWeights scale_weights(const Game &g) {
  int nq = g.num_questions();
  Int common = 1;
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < nq; ++y) {
      Int d = denominator(g.weight(x, y));
      common = boost::multiprecision::lcm(common, d);
    }
  ScaledWeights out;
  out.scale = common.convert_to<int64_t>();
  out.w.resize(static_cast<size_t>(nq) * nq);
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < nq; ++y) {
      Rat scaled = g.weight(x, y) * common;
      out.w[static_cast<size_t>(x) * nq + y] = numerator(scaled).convert_to<int64_t>();
    }
  return out;
}

inline double function_count(const Game &g) {
  return std::pow(static_cast<double>(g.num_answers()), g.num_questions());
}

// Exact max over deterministic pairs (f_A, f_B). For a fixed f_A the best
// response decomposes per question, so the search runs over f_A only, with a
// branch-and-bound upper bound from per-question suffix maxima.
inline int64_t best_pair_score(const Game &g) {
  const int nq = g.num_questions(), na = g.num_answers();
  auto sw = scale_weights(g);

  // h[x1][a][x2*na+b] = W(x1,x2) * v(x1,x2,a,b)
  const int cell = nq * na;
  std::vector<int64_t> h(static_cast<size_t>(nq) * na * cell);
  for (int x1 = 0; x1 < nq; ++x1)
    for (int a = 0; a < na; ++a) {
      int64_t *row = &h[(static_cast<size_t>(x1) * na + a) * cell];
      for (int x2 = 0; x2 < nq; ++x2) {
        int64_t weight = sw.w[static_cast<size_t>(x1) * nq + x2];
        for (int b = 0; b < na; ++b)
          row[x2 * na + b] = weight ? weight * (g.eval(x1, x2, a, b) ? 1 : 0) : 0;
      }
    }

  // suffix[d][x2*na+b] = sum over x1 >= d of max_a h[x1][a][...]
  std::vector<std::vector<int64_t>> suffix(nq + 1, std::vector<int64_t>(cell, 0));
  for (int d = nq - 1; d >= 0; --d) {
    for (int t = 0; t < cell; ++t) {
      int64_t best = h[(static_cast<size_t>(d) * na + 0) * cell + t];
      for (int a = 1; a < na; ++a)
        best = std::max(best, h[(static_cast<size_t>(d) * na + a) * cell + t]);
      suffix[d][t] = suffix[d + 1][t] + best;
    }
  }

  std::vector<int64_t> gcur(cell, 0);
  int64_t best = -1;
  auto bound_from = [&](int depth) {
    int64_t ub = 0;
    for (int x2 = 0; x2 < nq; ++x2) {
      int64_t m = INT64_MIN;
      for (int b = 0; b < na; ++b) {
        int t = x2 * na + b;
        m = std::max(m, gcur[t] + suffix[depth][t]);
      }
      ub += m;
    }
    return ub;
  };

  std::function<void(int)> rec = [&](int depth) {
    if (depth == nq) {
      int64_t total = 0;
      for (int x2 = 0; x2 < nq; ++x2) {
        int64_t m = INT64_MIN;
        for (int b = 0; b < na; ++b) m = std::max(m, gcur[x2 * na + b]);
        total += m;
      }
      best = std::max(best, total);
      return;
    }
    for (int a = 0; a < na; ++a) {
      const int64_t *row = &h[(static_cast<size_t>(depth) * na + a) * cell];
      for (int t = 0; t < cell; ++t) gcur[t] += row[t];
      if (bound_from(depth + 1) > best) rec(depth + 1);
      for (int t = 0; t < cell; ++t) gcur[t] -= row[t];
    }
  };
  rec(0);
  return best;
}

}  // namespace detail

// Exact classical value: question-weighted maximum over deterministic pairs.
inline Rat classical_value(const Game &g, const ClassicalOptions &opts = {}) {
  if (detail::function_count(g) > static_cast<double>(opts.max_candidates))
    throw CapacityError("classical_value: deterministic strategy space exceeds cap");
  auto sw = detail::scale_weights(g);
  int64_t best = detail::best_pair_score(g);
  return Rat(best, sw.scale);
}

namespace detail {

// Score of the ordered pair (f, g) scaled by the weight denominator.
inline std::vector<int64_t> pair_score_table(const Game &game, const ScaledWeights &sw,
                                             int64_t nfun) {
  const int nq = game.num_questions(), na = game.num_answers();
  std::vector<std::vector<int>> fun(nfun, std::vector<int>(nq));
  for (int64_t f = 0; f < nfun; ++f) {
    int64_t t = f;
    for (int x = 0; x < nq; ++x) {
      fun[f][x] = static_cast<int>(t % na);
      t /= na;
    }
  }
  std::vector<int64_t> score(static_cast<size_t>(nfun) * nfun, 0);
  for (int64_t f = 0; f < nfun; ++f)
    for (int64_t h = 0; h < nfun; ++h) {
      int64_t s = 0;
      for (int x1 = 0; x1 < nq; ++x1)
        for (int x2 = 0; x2 < nq; ++x2) {
          int64_t w = sw.w[static_cast<size_t>(x1) * nq + x2];
          if (w && game.eval(x1, x2, fun[f][x1], fun[h][x2])) s += w;
        }
      score[static_cast<size_t>(f) * nfun + h] = s;
    }
  return score;
}

}  // namespace detail

// Vertices are the |O|^|I| deterministic functions in lexicographic order;
// edges (and loops) join pairs achieving the classical value exactly.
inline Graph strategy_graph(const Game &g, const ClassicalOptions &opts = {}) {
  double nf = detail::function_count(g);
  if (nf * nf > static_cast<double>(opts.max_candidates))
    throw CapacityError("strategy_graph: pair space exceeds cap");
  int64_t nfun = static_cast<int64_t>(nf + 0.5);
  auto sw = detail::scale_weights(g);
  auto score = detail::pair_score_table(g, sw, nfun);
  int64_t best = *std::max_element(score.begin(), score.end());
  Graph sg(static_cast<int>(nfun));
  for (int64_t f = 0; f < nfun; ++f)
    for (int64_t h = f; h < nfun; ++h)
      if (score[static_cast<size_t>(f) * nfun + h] == best) sg.add_edge(static_cast<int>(f), static_cast<int>(h));
  return sg;
}

// Exact classical value of the n-player graph game: enumerate assignments of
// deterministic functions to vertices and average pair scores over edges.
inline Rat classical_value_on_graph(const Game &g, const Graph &h,
                                    const ClassicalOptions &opts = {}) {
  GraphGame gg(g, h);  // validates the graph
  double nf = detail::function_count(g);
  double assignments = std::pow(nf, h.n);
  if (nf * nf > static_cast<double>(opts.max_candidates) ||
      assignments * h.edge_count() > static_cast<double>(opts.max_candidates))
    throw CapacityError("classical_value_on_graph: assignment space exceeds cap");

  int64_t nfun = static_cast<int64_t>(nf + 0.5);
  auto sw = detail::scale_weights(g);
  auto score = detail::pair_score_table(g, sw, nfun);

  std::vector<int> assign(h.n, 0);
  int64_t best = -1;
  while (true) {
    int64_t total = 0;
    for (auto [u, v] : h.edges) total += score[static_cast<size_t>(assign[u]) * nfun + assign[v]];
    best = std::max(best, total);
    int pos = 0;
    while (pos < h.n && ++assign[pos] == nfun) assign[pos++] = 0;
    if (pos == h.n) break;
  }
  return Rat(best, sw.scale * h.edge_count());
}

struct Lemma1Report {
  Rat omega_classical;
  Rat omega_graph;
  bool hom_exists = false;
  bool consistent = false;
};

// Executable check of the strategy-graph characterization: the classical
// value survives on H iff H maps homomorphically into the strategy graph.
inline Lemma1Report verify_lemma1(const Game &g, const Graph &h,
                                  const ClassicalOptions &opts = {}) {
  Lemma1Report r;
  r.omega_classical = classical_value(g, opts);
  r.omega_graph = classical_value_on_graph(g, h, opts);
  r.hom_exists = homomorphism_exists(h, strategy_graph(g, opts));
  r.consistent = ((r.omega_classical == r.omega_graph) == r.hom_exists);
  return r;
}

inline nlohmann::json lemma1_report_to_json(const Lemma1Report &r) {
  return nlohmann::json{{"omega_classical", rat_to_string(r.omega_classical)},
                        {"omega_graph", rat_to_string(r.omega_graph)},
                        {"hom_exists", r.hom_exists},
                        {"lemma1_consistent", r.consistent}};
}

}  // namespace nlgg
