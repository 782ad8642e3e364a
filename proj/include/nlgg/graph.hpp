#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlgg {

// Finite undirected graph, loops allowed, no multi-edges.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
  std::vector<uint8_t> loops;              // per-vertex flag

  Graph() = default;
  explicit Graph(int vertices) : n(vertices), loops(vertices, 0) {
    if (vertices < 0) throw std::invalid_argument("negative vertex count");
  }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) {
      loops[u] = 1;
      return;
    }
    if (u > v) std::swap(u, v);
    auto e = std::make_pair(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) edges.insert(it, e);
  }

  void add_loop(int v) {
    if (v < 0 || v >= n) throw std::invalid_argument("loop vertex out of range");
    loops[v] = 1;
  }

  bool has_edge(int u, int v) const {
    if (u == v) return loops[u] != 0;
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }

  bool has_loop(int v) const { return loops[v] != 0; }

  bool any_loop() const {
    for (auto l : loops)
      if (l) return true;
    return false;
  }

  int edge_count() const { return static_cast<int>(edges.size()); }

  std::vector<std::vector<int>> adjacency_lists() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(n, 0);
    for (auto [u, v] : edges) {
      d[u]++;
      d[v]++;
    }
    return d;
  }

  bool operator==(const Graph &o) const {
    return n == o.n && edges == o.edges && loops == o.loops;
  }
};

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Spider with a hub and one path of each given length hanging off it.
inline Graph star_graph(const std::vector<int> &arms) {
  int total = 1;
  for (int a : arms) {
    if (a < 1) throw std::invalid_argument("star arm length must be >= 1");
    total += a;
  }
  Graph g(total);
  int next = 1;
  for (int a : arms) {
    int prev = 0;
    for (int i = 0; i < a; ++i) {
      g.add_edge(prev, next);
      prev = next++;
    }
  }
  return g;
}

inline bool is_connected(const Graph &g) {
  if (g.n == 0) return true;
  auto adj = g.adjacency_lists();
  std::vector<uint8_t> seen(g.n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        count++;
        q.push(v);
      }
  }
  return count == g.n;
}

inline bool is_tree(const Graph &g) {
  return !g.any_loop() && g.edge_count() == g.n - 1 && is_connected(g);
}

inline bool is_bipartite(const Graph &g) {
  if (g.any_loop()) return false;
  auto adj = g.adjacency_lists();
  std::vector<int> color(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

// L(H): one vertex per edge of H, adjacent iff the edges share an endpoint.
inline Graph line_graph(const Graph &h) {
  if (h.any_loop()) throw std::invalid_argument("line graph requires a loop-free graph");
  int m = h.edge_count();
  Graph lg(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto [a, b] = h.edges[i];
      auto [c, d] = h.edges[j];
      if (a == c || a == d || b == c || b == d) lg.add_edge(i, j);
    }
  return lg;
}

// Adjacency-preserving vertex map H1 -> H2; loops in H2 absorb merged
// endpoints. Backtracking over H1 vertices in BFS order.
inline bool homomorphism_exists(const Graph &h1, const Graph &h2) {
  if (h1.n == 0) return true;
  if (h2.n == 0) return false;
  for (int v = 0; v < h1.n; ++v)
    if (h1.has_loop(v) && !h2.any_loop()) return false;
  if (h1.edge_count() > 0 && h2.edge_count() == 0 && !h2.any_loop()) return false;

  auto adj1 = h1.adjacency_lists();
  // BFS order so each placed vertex (after the component root) has a mapped
  // neighbor to constrain it.
  std::vector<int> order;
  std::vector<uint8_t> seen(h1.n, 0);
  for (int s = 0; s < h1.n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      order.push_back(u);
      for (int v : adj1[u])
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
  }

  std::vector<int> img(h1.n, -1);
  auto ok = [&](int u, int t) {
    if (h1.has_loop(u) && !h2.has_loop(t)) return false;
    for (int w : adj1[u]) {
      if (img[w] == -1) continue;
      if (img[w] == t) {
        if (!h2.has_loop(t)) return false;
      } else if (!h2.has_edge(img[w], t)) {
        return false;
      }
    }
    return true;
  };
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == order.size()) return true;
    int u = order[i];
    for (int t = 0; t < h2.n; ++t) {
      if (!ok(u, t)) continue;
      img[u] = t;
      if (rec(i + 1)) return true;
      img[u] = -1;
    }
    return false;
  };
  return rec(0);
}

// Lexicographically minimal adjacency code over all vertex orderings.
// Exact isomorphism invariant; intended for small graphs (<= ~10 vertices).
inline std::vector<uint8_t> canonical_code(const Graph &g) {
  int n = g.n;
  std::vector<uint8_t> best;
  bool have_best = false;
  std::vector<int> perm;
  std::vector<uint8_t> used(n, 0), code;

  // Bits appended at position i: loop(p_i), then adj(p_i, p_0..p_{i-1}).
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (!have_best || code < best) {
        best = code;
        have_best = true;
      }
      return;
    }
    // Only candidates with the minimal bit row can lead to the lex-min code.
    std::vector<uint8_t> min_row;
    std::vector<int> cands;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      std::vector<uint8_t> row;
      row.push_back(g.has_loop(v) ? 1 : 0);
      for (int j = 0; j < i; ++j) row.push_back(g.has_edge(v, perm[j]) ? 1 : 0);
      if (cands.empty() || row < min_row) {
        min_row = row;
        cands.assign(1, v);
      } else if (row == min_row) {
        cands.push_back(v);
      }
    }
    size_t old = code.size();
    code.insert(code.end(), min_row.begin(), min_row.end());
    // Prune: compare the code built so far against the best known one.
    if (have_best) {
      bool worse = false, better = false;
      for (size_t k = old; k < code.size() && k < best.size(); ++k) {
        if (code[k] > best[k]) {
          worse = true;
          break;
        }
        if (code[k] < best[k]) {
          better = true;
          break;
        }
      }
      if (worse) {
        code.resize(old);
        return;
      }
      (void)better;
    }
    for (int v : cands) {
      used[v] = 1;
      perm.push_back(v);
      rec(i + 1);
      perm.pop_back();
      used[v] = 0;
    }
    code.resize(old);
  };
  rec(0);
  best.insert(best.begin(), static_cast<uint8_t>(n));
  return best;
}

inline bool is_isomorphic(const Graph &a, const Graph &b) {
  if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
  return canonical_code(a) == canonical_code(b);
}

namespace detail {

// AHU encoding of a rooted tree.
inline std::string ahu_rooted(const std::vector<std::vector<int>> &adj, int root, int parent) {
  std::vector<std::string> child;
  for (int v : adj[root])
    if (v != parent) child.push_back(ahu_rooted(adj, v, root));
  std::sort(child.begin(), child.end());
  std::string s = "(";
  for (auto &c : child) s += c;
  s += ")";
  return s;
}

inline std::vector<int> tree_centers(const Graph &g) {
  int n = g.n;
  if (n == 1) return {0};
  auto adj = g.adjacency_lists();
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<int> layer;
  std::vector<uint8_t> removed(n, 0);
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      for (int w : adj[v])
        if (!removed[w] && --deg[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  return layer;
}

}  // namespace detail

// Canonical string for a free tree (AHU at the center).
inline std::string tree_code(const Graph &g) {
  if (!is_tree(g)) throw std::invalid_argument("tree_code requires a tree");
  auto adj = g.adjacency_lists();
  auto centers = detail::tree_centers(g);
  if (centers.size() == 1) return detail::ahu_rooted(adj, centers[0], -1);
  std::string a = detail::ahu_rooted(adj, centers[0], centers[1]);
  std::string b = detail::ahu_rooted(adj, centers[1], centers[0]);
  if (a > b) std::swap(a, b);
  return "[" + a + b + "]";
}

// All free trees on n vertices up to isomorphism, by leaf augmentation.
inline std::vector<Graph> trees_up_to_iso(int n) {
  if (n < 1) return {};
  std::vector<Graph> cur = {Graph(1)};
  for (int size = 2; size <= n; ++size) {
    std::map<std::string, Graph> next;
    for (const auto &t : cur) {
      for (int v = 0; v < t.n; ++v) {
        Graph bigger(t.n + 1);
        for (auto [a, b] : t.edges) bigger.add_edge(a, b);
        bigger.add_edge(v, t.n);
        next.emplace(tree_code(bigger), bigger);
      }
    }
    cur.clear();
    for (auto &[code, t] : next) cur.push_back(t);
  }
  return cur;
}

// A tree has a perfect matching iff repeatedly matching a leaf with its
// support vertex never strands a vertex; the matching is unique.
inline bool tree_has_perfect_matching(const Graph &g) {
  if (!is_tree(g) || g.n % 2 != 0) return false;
  auto adj = g.adjacency_lists();
  std::vector<int> deg(g.n);
  std::vector<uint8_t> gone(g.n, 0);
  std::queue<int> leaves;
  for (int v = 0; v < g.n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] == 1) leaves.push(v);
  }
  int matched = 0;
  while (!leaves.empty()) {
    int u = leaves.front();
    leaves.pop();
    if (gone[u]) continue;
    int partner = -1;
    for (int w : adj[u])
      if (!gone[w]) partner = w;
    if (partner == -1) return false;  // isolated unmatched vertex
    gone[u] = gone[partner] = 1;
    matched += 2;
    for (int w : adj[partner]) {
      if (gone[w]) continue;
      if (--deg[w] == 1) leaves.push(w);
      if (deg[w] == 0) return false;
    }
  }
  return matched == g.n;
}

// Trees on 2k vertices that split into k disjoint edges joined by k-1 edges;
// equivalently trees with a perfect matching. Canonically ordered by tree code.
inline std::vector<Graph> enumerate_Tk(int k, int cap = 6) {
  if (k < 2) throw std::invalid_argument("enumerate_Tk requires k >= 2");
  if (k > cap) throw std::length_error("enumerate_Tk: k exceeds cap");
  std::vector<Graph> out;
  for (const auto &t : trees_up_to_iso(2 * k))
    if (tree_has_perfect_matching(t)) out.push_back(t);
  return out;
}

inline bool is_in_some_Tk(const Graph &h) {
  if (!is_connected(h)) throw std::invalid_argument("is_in_some_Tk requires a connected graph");
  if (h.n < 2 || h.n % 2 != 0) return false;
  return is_tree(h) && tree_has_perfect_matching(h);
}

// Grammar: Pn | Cn | star-a,b,c | Tk:i
inline Graph named_graph(const std::string &name) {
  auto bad = [&] { throw std::invalid_argument("unknown graph name: '" + name + "'"); };
  if (name.empty()) bad();
  try {
    if (name[0] == 'P' || name[0] == 'p') return path_graph(std::stoi(name.substr(1)));
    if (name[0] == 'C' || name[0] == 'c') return cycle_graph(std::stoi(name.substr(1)));
    if (name.rfind("star-", 0) == 0 || name.rfind("STAR-", 0) == 0) {
      std::vector<int> arms;
      std::string rest = name.substr(5);
      size_t pos = 0;
      while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        arms.push_back(std::stoi(rest.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      if (arms.empty()) bad();
      return star_graph(arms);
    }
    if (name[0] == 'T' || name[0] == 't') {
      auto colon = name.find(':');
      if (colon == std::string::npos) bad();
      int k = std::stoi(name.substr(1, colon - 1));
      int idx = std::stoi(name.substr(colon + 1));
      auto members = enumerate_Tk(k);
      if (idx < 0 || idx >= static_cast<int>(members.size()))
        throw std::invalid_argument("Tk index out of range in '" + name + "'");
      return members[idx];
    }
  } catch (const std::invalid_argument &e) {
    if (std::string(e.what()).rfind("unknown", 0) == 0 ||
        std::string(e.what()).rfind("Tk index", 0) == 0)
      throw;
    bad();
  } catch (const std::out_of_range &) {
    bad();
  }
  bad();
  return Graph();  // unreachable
}

inline nlohmann::json graph_to_json(const Graph &g) {
  nlohmann::json j;
  j["vertices"] = g.n;
  auto edges = nlohmann::json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  j["edges"] = edges;
  auto loops = nlohmann::json::array();
  for (int v = 0; v < g.n; ++v)
    if (g.has_loop(v)) loops.push_back(v);
  j["loops"] = loops;
  return j;
}

inline Graph graph_from_json(const nlohmann::json &j) {
  Graph g(j.at("vertices").get<int>());
  for (const auto &e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  if (j.contains("loops"))
    for (const auto &v : j["loops"]) g.add_loop(v.get<int>());
  return g;
}

// Plain-text alternative: one "i j" pair per line; "i i" marks a loop.
inline Graph graph_from_edge_list(const std::string &text) {
  std::vector<std::pair<int, int>> pairs;
  int maxv = -1;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    int u, v;
    if (sscanf(line.c_str(), "%d %d", &u, &v) == 2) {
      pairs.emplace_back(u, v);
      maxv = std::max({maxv, u, v});
    }
  }
  Graph g(maxv + 1);
  for (auto [u, v] : pairs) g.add_edge(u, v);
  return g;
}

}  // namespace nlgg
