#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlgg/game.hpp"
#include "nlgg/ncpoly.hpp"

namespace nlgg {

// Binary-observable scenario over the vertices of a graph: one party per
// vertex, the same number of two-outcome settings everywhere.
struct NpaScenario {
  int parties = 0;
  int settings = 0;
  Graph graph;
};

struct NpaLevel {
  int base = 1;
  bool edge_pairs = false;  // words one longer than base, supported on one edge
  bool triples = false;     // length-3 words, one letter per party of a connected triple

  static NpaLevel parse(const std::string &s) {
    NpaLevel l;
    if (s == "1" || s == "2" || s == "3") {
      l.base = s[0] - '0';
    } else if (s == "1+edge-pairs") {
      l.base = 1;
      l.edge_pairs = true;
    } else if (s == "2+edge-pairs") {
      l.base = 2;
      l.edge_pairs = true;
    } else if (s == "2+triples") {
      l.base = 2;
      l.edge_pairs = true;
      l.triples = true;
    } else {
      throw std::invalid_argument("unknown NPA level '" + s + "'");
    }
    return l;
  }

  std::string to_string() const {
    std::string s = std::to_string(base);
    if (triples) return s + "+triples";
    if (edge_pairs) s += "+edge-pairs";
    return s;
  }
};

namespace detail {

inline std::vector<Word> npa_basis(const NpaScenario &sc, const NpaLevel &level) {
  std::vector<Letter> letters;
  for (int p = 0; p < sc.parties; ++p)
    for (int s = 0; s < sc.settings; ++s) letters.push_back(make_letter(p, s));

  std::set<Word> seen;
  std::vector<Word> frontier = {Word{}};
  seen.insert(Word{});
  for (int len = 1; len <= level.base; ++len) {
    std::vector<Word> next;
    for (const auto &w : frontier)
      for (Letter l : letters) {
        Word cand = w;
        cand.push_back(l);
        cand = canonical_word(cand);
        if (static_cast<int>(cand.size()) != len) continue;
        if (seen.insert(cand).second) next.push_back(cand);
      }
    frontier = std::move(next);
  }
  if (level.edge_pairs) {
    // Words of length base+1 supported on a single graph edge.
    for (auto [u, v] : sc.graph.edges) {
      std::vector<Letter> pair_letters;
      for (int s = 0; s < sc.settings; ++s) {
        pair_letters.push_back(make_letter(u, s));
        pair_letters.push_back(make_letter(v, s));
      }
      std::set<Word> fr = {Word{}};
      for (int len = 1; len <= level.base + 1; ++len) {
        std::set<Word> nx;
        for (const auto &w : fr)
          for (Letter l : pair_letters) {
            Word cand = w;
            cand.push_back(l);
            cand = canonical_word(cand);
            if (static_cast<int>(cand.size()) == len) nx.insert(cand);
          }
        if (len == level.base + 1)
          for (const auto &w : nx) seen.insert(w);
        fr = std::move(nx);
      }
    }
  }
  if (level.triples) {
    // One letter from each party of a connected vertex triple.
    for (int a = 0; a < sc.parties; ++a)
      for (int b = 0; b < sc.parties; ++b)
        for (int c = b + 1; c < sc.parties; ++c) {
          if (a == b || a == c) continue;
          if (!sc.graph.has_edge(a, b) || !sc.graph.has_edge(a, c)) continue;  // center a
          for (int sa = 0; sa < sc.settings; ++sa)
            for (int sb = 0; sb < sc.settings; ++sb)
              for (int sc2 = 0; sc2 < sc.settings; ++sc2)
                seen.insert(canonical_word(
                    {make_letter(a, sa), make_letter(b, sb), make_letter(c, sc2)}));
        }
  }
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Word &a, const Word &b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace detail

// Moment-matrix structure: canonical words index the basis, entries (i,j)
// carrying the same canonical reduction of w_i^* w_j (identified with its
// adjoint; the matrix is real) form one symmetry class = one SDP variable.
struct MomentProblem {
  NpaScenario scenario;
  NpaLevel level;
  std::vector<Word> basis;
  int size = 0;
  int num_classes = 0;
  int one_class = -1;  // class of the empty word (all diagonal entries)
  std::vector<int> entry_class;  // size*size
  std::vector<std::vector<std::pair<int, int>>> class_entries;
  std::map<Word, int> class_of_word;
  // objective: value = c0 + sum_k obj[k] * x_k
  double c0 = 0;
  std::vector<double> obj;

  int word_class(const Word &w) const {
    Word cw = canonical_word(w);
    Word aw = word_adjoint(cw);
    const Word &key = aw < cw ? aw : cw;
    auto it = class_of_word.find(key);
    return it == class_of_word.end() ? -1 : it->second;
  }
};

inline MomentProblem build_moment_structure(const NpaScenario &sc, const NpaLevel &level) {
  MomentProblem mp;
  mp.scenario = sc;
  mp.level = level;
  mp.basis = detail::npa_basis(sc, level);
  mp.size = static_cast<int>(mp.basis.size());
  mp.entry_class.assign(static_cast<size_t>(mp.size) * mp.size, -1);

  std::vector<Word> adj(mp.size);
  for (int i = 0; i < mp.size; ++i) adj[i] = word_adjoint(mp.basis[i]);

  for (int i = 0; i < mp.size; ++i)
    for (int j = 0; j < mp.size; ++j) {
      Word prod = adj[i];
      prod.insert(prod.end(), mp.basis[j].begin(), mp.basis[j].end());
      prod = canonical_word(prod);
      Word pa = word_adjoint(prod);
      const Word &key = pa < prod ? pa : prod;
      auto [it, inserted] = mp.class_of_word.try_emplace(key, mp.num_classes);
      if (inserted) {
        mp.class_entries.emplace_back();
        ++mp.num_classes;
      }
      int cls = it->second;
      mp.entry_class[static_cast<size_t>(i) * mp.size + j] = cls;
      mp.class_entries[cls].emplace_back(i, j);
    }
  mp.one_class = mp.class_of_word.at(Word{});
  mp.obj.assign(mp.num_classes, 0.0);
  return mp;
}

// Winning probability of a binary-answer graph game as an affine function of
// single-letter and cross-party pair moments.
inline MomentProblem build_moment_problem(const GraphGame &gg, const NpaLevel &level) {
  const Game &g = gg.base;
  if (g.num_answers() != 2)
    throw std::invalid_argument("NPA construction needs a binary-answer base game");
  if (gg.players() > 16) throw std::invalid_argument("too many parties");
  if (g.num_questions() > 8) throw std::invalid_argument("too many settings");

  NpaScenario sc{gg.players(), g.num_questions(), gg.graph};
  MomentProblem mp = build_moment_structure(sc, level);

  double edge_factor = 1.0 / gg.graph.edge_count();
  for (auto [u, v] : gg.graph.edges) {
    for (int x = 0; x < g.num_questions(); ++x)
      for (int y = 0; y < g.num_questions(); ++y) {
        double w = rat_to_double(g.weight(x, y)) * edge_factor;
        if (w == 0) continue;
        double k1 = 0, ku = 0, kv = 0, kuv = 0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            if (!g.eval(x, y, a, b)) continue;
            double sa = a ? -1 : 1, sb = b ? -1 : 1;
            k1 += 0.25;
            ku += 0.25 * sa;
            kv += 0.25 * sb;
            kuv += 0.25 * sa * sb;
          }
        mp.c0 += w * k1;
        auto add = [&](const Word &word, double coeff) {
          if (coeff == 0) return;
          int cls = mp.word_class(word);
          if (cls < 0) throw std::logic_error("objective word missing from moment matrix");
          mp.obj[cls] += w * coeff;
        };
        add({make_letter(u, x)}, ku);
        add({make_letter(v, y)}, kv);
        add({make_letter(u, x), make_letter(v, y)}, kuv);
      }
  }
  return mp;
}

// Moment vector of an explicit strategy (real parts), indexed by class.
// Requires binary measurements; used to cross-check that strategies are
// feasible points of the relaxation.
template <typename ExpectationFn>
inline std::vector<double> strategy_moments(const MomentProblem &mp, ExpectationFn &&expect) {
  std::vector<double> x(mp.num_classes, 0.0);
  for (const auto &[w, cls] : mp.class_of_word) x[cls] = expect(w);
  return x;
}

}  // namespace nlgg
