#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlgg/bounds.hpp"
#include "nlgg/classical.hpp"
#include "nlgg/quantum.hpp"

namespace nlgg {

struct GraphBoundEntry {
  std::string name;
  BoundReport bound;
  bool no_advantage = false;
};

// Classification of a game's behavior across all graph configurations, built
// from the classical value, certified quantum bounds on P3/P4 and the tree
// families T_k, explicit strategy values where available, and the
// strategy-graph homomorphism condition.
struct MonogamyReport {
  std::string game;
  Rat omega_classical;
  GraphBoundEntry p3, p4;
  std::vector<std::pair<int, std::vector<GraphBoundEntry>>> tk;  // k -> member bounds
  bool strategy_graph_has_loop = false;
  // explicit strategy lower bounds proving advantage (graph name -> value)
  std::vector<std::pair<std::string, double>> proven_advantage;
  std::string classification;  // monogamous | advantage-on | inconclusive
  std::vector<std::string> advantage_graphs;
  std::string note;
};

struct MonogamyOptions {
  int max_k = 3;
  double tol = 1e-3;  // bound <= classical + tol certifies "no advantage"
  // levels tried in order until one certifies; the last is kept otherwise
  std::vector<std::string> levels = {"1+edge-pairs", "2", "2+triples"};
  double sdp_tol = 1e-8;
};

namespace detail {

inline BoundReport best_bound(const Game &g, const Graph &h, double target,
                              const MonogamyOptions &opts) {
  BoundReport best;
  bool have = false;
  for (const auto &ls : opts.levels) {
    auto b = quantum_upper_bound(GraphGame(g, h), NpaLevel::parse(ls), opts.sdp_tol);
    bool plateau = have && b.bound > best.bound - 1e-6;
    if (!have || b.bound < best.bound) {
      best = b;
      have = true;
    }
    // stop once the target is certified, or once escalation stops helping
    if (best.bound <= target || plateau) break;
  }
  return best;
}

}  // namespace detail

inline MonogamyReport monogamy_report(const Game &g, const MonogamyOptions &opts = {}) {
  MonogamyReport rep;
  rep.game = g.label();
  rep.omega_classical = classical_value(g);
  double omega = rat_to_double(rep.omega_classical);
  double target = omega + opts.tol;

  Graph sg = strategy_graph(g);
  rep.strategy_graph_has_loop = sg.any_loop();

  auto entry = [&](const std::string &name, const Graph &h) {
    GraphBoundEntry e;
    e.name = name;
    e.bound = detail::best_bound(g, h, target, opts);
    e.no_advantage = e.bound.bound <= target;
    return e;
  };

  rep.p3 = entry("P3", path_graph(3));
  rep.p4 = entry("P4", path_graph(4));

  for (int k = 3; k <= opts.max_k; ++k) {
    std::vector<GraphBoundEntry> members;
    auto graphs = enumerate_Tk(k);
    for (size_t i = 0; i < graphs.size(); ++i)
      members.push_back(entry("T" + std::to_string(k) + ":" + std::to_string(i), graphs[i]));
    rep.tk.emplace_back(k, std::move(members));
  }

  // Explicit strategies provide advantage lower bounds for the CHSH game.
  if (g.label() == "chsh") {
    double v2 = strategy_value(GraphGame(g, path_graph(2)), make_tsirelson_strategy());
    if (v2 > omega + 1e-9) rep.proven_advantage.emplace_back("P2", v2);
    double v4 = strategy_value(GraphGame(g, path_graph(4)), make_p4_strategy());
    if (v4 > omega + 1e-9) rep.proven_advantage.emplace_back("P4", v4);
  }

  bool tk_all_clear = true;
  for (const auto &[k, members] : rep.tk)
    for (const auto &m : members) tk_all_clear &= m.no_advantage;

  if (rep.p3.no_advantage && rep.p4.no_advantage && rep.strategy_graph_has_loop) {
    // No advantage on P3 and P4 extends to every graph that maps into the
    // strategy graph; a loop absorbs every graph.
    rep.classification = "monogamous";
    rep.note = "no advantage on P3 and P4; strategy graph has a loop, so the bound "
               "holds on every graph";
  } else if (rep.p3.no_advantage && !rep.p4.no_advantage && tk_all_clear && opts.max_k >= 3 &&
             !rep.proven_advantage.empty()) {
    // Advantage certified on some graphs; everything else is excluded by the
    // P3 bound (non-tree-family graphs) and the T_k induction.
    rep.classification = "advantage-on";
    for (const auto &[name, value] : rep.proven_advantage) rep.advantage_graphs.push_back(name);
    rep.note = "no advantage on P3 and on the T_k families up to k=" +
               std::to_string(opts.max_k) + "; induction extends this to all larger k";
  } else {
    rep.classification = "inconclusive";
    rep.note = "certified bounds do not settle every configuration at the levels tried";
  }
  return rep;
}

inline nlohmann::json bound_entry_json(const GraphBoundEntry &e) {
  return {{"graph", e.name},
          {"bound", e.bound.bound},
          {"level", e.bound.level},
          {"gap", e.bound.gap},
          {"status", e.bound.status},
          {"no_advantage", e.no_advantage}};
}

inline nlohmann::json monogamy_report_to_json(const MonogamyReport &r) {
  nlohmann::json j;
  j["game"] = r.game;
  j["omega_classical"] = rat_to_string(r.omega_classical);
  j["p3"] = bound_entry_json(r.p3);
  j["p4"] = bound_entry_json(r.p4);
  auto tk = nlohmann::json::array();
  for (const auto &[k, members] : r.tk) {
    auto ms = nlohmann::json::array();
    for (const auto &m : members) ms.push_back(bound_entry_json(m));
    tk.push_back({{"k", k}, {"members", ms}});
  }
  j["tk"] = tk;
  j["strategy_graph_has_loop"] = r.strategy_graph_has_loop;
  auto adv = nlohmann::json::array();
  for (const auto &[name, value] : r.proven_advantage)
    adv.push_back({{"graph", name}, {"strategy_value", value}});
  j["proven_advantage"] = adv;
  j["classification"] = r.classification;
  if (!r.advantage_graphs.empty()) j["advantage_graphs"] = r.advantage_graphs;
  j["note"] = r.note;
  return j;
}

}  // namespace nlgg
