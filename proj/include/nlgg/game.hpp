#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nlgg/graph.hpp"
#include "nlgg/rational.hpp"

namespace nlgg {

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string &msg) : std::runtime_error(msg) {}
};

// Symmetric two-player game: question set {0..nq-1}, answer set {0..na-1},
// referee predicate v(x1,x2,a1,a2) with v(x1,x2,a1,a2) = v(x2,x1,a2,a1).
// Question pairs are uniform unless an explicit symmetric weight table is
// attached (the odd cycle game needs one).
//
// Small games hold a materialized table; combinator results whose table
// would not fit (OR-composition of the magic square) evaluate lazily.
class Game {
 public:
  static constexpr size_t kMaxTableEntries = 1u << 24;

  Game(int nq, int na, std::string label)
      : nq_(nq), na_(na), label_(std::move(label)) {
    if (nq < 1 || na < 1) throw std::invalid_argument("game needs >= 1 question and answer");
    size_t entries = table_entries();
    if (entries <= kMaxTableEntries) table_.assign(entries, 0);
  }

  Game(int nq, int na, std::string label, std::function<bool(int, int, int, int)> fn)
      : nq_(nq), na_(na), label_(std::move(label)), fn_(std::move(fn)) {
    if (nq < 1 || na < 1) throw std::invalid_argument("game needs >= 1 question and answer");
  }

  int num_questions() const { return nq_; }
  int num_answers() const { return na_; }
  const std::string &label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  bool materialized() const { return !table_.empty(); }

  size_t table_entries() const {
    return static_cast<size_t>(nq_) * nq_ * na_ * na_;
  }

  void set_entry(int x1, int x2, int a1, int a2, bool win) {
    check_range(x1, x2, a1, a2);
    if (table_.empty()) throw std::logic_error("set_entry on a lazy game");
    table_[index(x1, x2, a1, a2)] = win ? 1 : 0;
    table_[index(x2, x1, a2, a1)] = win ? 1 : 0;
  }

  bool eval(int x1, int x2, int a1, int a2) const {
    check_range(x1, x2, a1, a2);
    if (!table_.empty()) return table_[index(x1, x2, a1, a2)] != 0;
    return fn_(x1, x2, a1, a2);
  }

  bool is_symmetric() const {
    if (table_.empty()) return true;  // lazy games are symmetric by construction
    for (int x1 = 0; x1 < nq_; ++x1)
      for (int x2 = 0; x2 < nq_; ++x2)
        for (int a1 = 0; a1 < na_; ++a1)
          for (int a2 = 0; a2 < na_; ++a2)
            if (table_[index(x1, x2, a1, a2)] != table_[index(x2, x1, a2, a1)]) return false;
    return true;
  }

  // Question-pair weights; empty means uniform 1/nq^2.
  bool has_weights() const { return !weights_.empty(); }

  void set_weights(std::vector<Rat> w) {
    if (static_cast<int>(w.size()) != nq_ * nq_)
      throw std::invalid_argument("weight table has wrong size");
    Rat sum = 0;
    for (int x1 = 0; x1 < nq_; ++x1)
      for (int x2 = 0; x2 < nq_; ++x2) {
        const Rat &v = w[x1 * nq_ + x2];
        if (v < 0) throw std::invalid_argument("negative question weight");
        if (v != w[x2 * nq_ + x1]) throw std::invalid_argument("asymmetric question weights");
        sum += v;
      }
    if (sum != 1) throw std::invalid_argument("question weights must sum to 1");
    weights_ = std::move(w);
  }

  Rat weight(int x1, int x2) const {
    if (weights_.empty()) return Rat(1, static_cast<long>(nq_) * nq_);
    return weights_[static_cast<size_t>(x1) * nq_ + x2];
  }

 private:
  size_t index(int x1, int x2, int a1, int a2) const {
    return ((static_cast<size_t>(x1) * nq_ + x2) * na_ + a1) * na_ + a2;
  }
  void check_range(int x1, int x2, int a1, int a2) const {
    if (x1 < 0 || x1 >= nq_ || x2 < 0 || x2 >= nq_)
      throw std::out_of_range("question index out of range");
    if (a1 < 0 || a1 >= na_ || a2 < 0 || a2 >= na_)
      throw std::out_of_range("answer index out of range");
  }

  int nq_, na_;
  std::string label_;
  std::vector<uint8_t> table_;
  std::function<bool(int, int, int, int)> fn_;
  std::vector<Rat> weights_;
};

inline bool eval_predicate(const Game &g, int x1, int x2, int a1, int a2) {
  return g.eval(x1, x2, a1, a2);
}

// XOR game: win iff a1 + a2 = x1*x2 (mod 2).
inline Game make_chsh() {
  Game g(2, 2, "chsh");
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          g.set_entry(x1, x2, a1, a2, ((a1 ^ a2) == (x1 & x2)));
  return g;
}

// Questions are vertices of an odd cycle; the referee asks equal or adjacent
// vertices only (encoded in the weight table: 1/(2n) per equal pair, 1/(4n)
// per ordered adjacent pair). Answers must agree exactly on equal questions
// and differ on adjacent ones. Never-asked pairs carry weight 0 and a
// vacuously true predicate.
inline Game make_odd_cycle(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd cycle game needs odd n >= 3");
  Game g(n, 2, "oc" + std::to_string(n));
  auto adjacent = [n](int x, int y) {
    int d = (x - y + n) % n;
    return d == 1 || d == n - 1;
  };
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          bool win = true;
          if (x1 == x2)
            win = (a1 == a2);
          else if (adjacent(x1, x2))
            win = (a1 != a2);
          g.set_entry(x1, x2, a1, a2, win);
        }
  std::vector<Rat> w(static_cast<size_t>(n) * n, Rat(0));
  for (int x = 0; x < n; ++x) {
    w[static_cast<size_t>(x) * n + x] = Rat(1, 2 * n);
    int y = (x + 1) % n;
    w[static_cast<size_t>(x) * n + y] = Rat(1, 4 * n);
    w[static_cast<size_t>(y) * n + x] = Rat(1, 4 * n);
  }
  g.set_weights(std::move(w));
  return g;
}

// Symmetric magic square game. Questions 0..2 are rows, 3..5 are columns of a
// 3x3 grid; answers are 3-bit strings (bit i = cell i of the line). A valid
// answer has even bit-sum on a row and odd on a column; invalid parity loses
// outright. Two lines must agree on every shared cell.
inline Game make_magic_square() {
  Game g(6, 8, "ms");
  auto bit = [](int a, int i) { return (a >> i) & 1; };
  auto parity_ok = [&](int x, int a) {
    int p = bit(a, 0) ^ bit(a, 1) ^ bit(a, 2);
    return x < 3 ? p == 0 : p == 1;
  };
  for (int x1 = 0; x1 < 6; ++x1)
    for (int x2 = 0; x2 < 6; ++x2)
      for (int a1 = 0; a1 < 8; ++a1)
        for (int a2 = 0; a2 < 8; ++a2) {
          bool win = parity_ok(x1, a1) && parity_ok(x2, a2);
          if (win) {
            if (x1 == x2) {
              win = (a1 == a2);
            } else if (x1 < 3 && x2 >= 3) {
              win = bit(a1, x2 - 3) == bit(a2, x1);  // cell (row x1, col x2-3)
            } else if (x1 >= 3 && x2 < 3) {
              win = bit(a1, x2) == bit(a2, x1 - 3);
            }
            // same type, different line: no shared cell
          }
          g.set_entry(x1, x2, a1, a2, win);
        }
  return g;
}

// |I| = 1 game requiring the two answers to differ.
inline Game make_anticorrelation() {
  Game g(1, 2, "anticorrelation");
  g.set_entry(0, 0, 0, 1, true);
  g.set_entry(0, 0, 1, 0, true);
  return g;
}

inline Game make_always_win() {
  Game g(1, 1, "always-win");
  g.set_entry(0, 0, 0, 0, true);
  return g;
}

inline Game make_always_lose() { return Game(1, 1, "always-lose"); }

// Two simultaneous instances; win if at least one instance is won.
// Question (x1,x2) -> x1*nq+x2, answer (a1,a2) -> a1*na+a2.
inline Game or_compose(const Game &g) {
  if (g.has_weights())
    throw std::invalid_argument("or_compose supports uniform question weights only");
  int nq = g.num_questions(), na = g.num_answers();
  int cq = nq * nq, ca = na * na;
  auto fn = [g, nq, na](int x, int y, int a, int b) {
    return g.eval(x / nq, y / nq, a / na, b / na) || g.eval(x % nq, y % nq, a % na, b % na);
  };
  size_t entries = static_cast<size_t>(cq) * cq * ca * ca;
  if (entries > Game::kMaxTableEntries) {
    return Game(cq, ca, g.label() + "-or2", fn);
  }
  Game out(cq, ca, g.label() + "-or2");
  for (int x = 0; x < cq; ++x)
    for (int y = 0; y < cq; ++y)
      for (int a = 0; a < ca; ++a)
        for (int b = 0; b < ca; ++b) out.set_entry(x, y, a, b, fn(x, y, a, b));
  return out;
}

// n-fold AND of independent instances. Questions and answers are base-|I|
// (resp. base-|O|) digit strings, most significant digit = first instance.
inline Game parallel_repeat(const Game &g, int n, long long cap = 2000) {
  if (n < 1) throw std::invalid_argument("parallel_repeat needs n >= 1");
  if (g.has_weights())
    throw std::invalid_argument("parallel_repeat supports uniform question weights only");
  double qs = std::pow(static_cast<double>(g.num_questions()), n);
  double as = std::pow(static_cast<double>(g.num_answers()), n);
  if (qs * as > static_cast<double>(cap))
    throw CapacityError("parallel_repeat: |I|^n * |O|^n exceeds cap");
  int cq = static_cast<int>(qs + 0.5), ca = static_cast<int>(as + 0.5);
  int nq = g.num_questions(), na = g.num_answers();
  Game out(cq, ca, g.label() + "-par" + std::to_string(n));
  for (int x = 0; x < cq; ++x)
    for (int y = 0; y < cq; ++y)
      for (int a = 0; a < ca; ++a)
        for (int b = 0; b < ca; ++b) {
          bool win = true;
          int xx = x, yy = y, aa = a, bb = b;
          for (int i = 0; i < n && win; ++i) {
            win = g.eval(xx % nq, yy % nq, aa % na, bb % na);
            xx /= nq;
            yy /= nq;
            aa /= na;
            bb /= na;
          }
          out.set_entry(x, y, a, b, win);
        }
  return out;
}

// n-player game: players sit on the vertices of a simple connected graph and
// the base game is played on a uniformly random edge.
struct GraphGame {
  Game base;
  Graph graph;

  GraphGame(Game g, Graph h) : base(std::move(g)), graph(std::move(h)) {
    if (graph.n < 2) throw std::invalid_argument("graph game needs >= 2 players");
    if (graph.any_loop()) throw std::invalid_argument("graph game requires a loop-free graph");
    if (!is_connected(graph)) throw std::invalid_argument("graph game requires a connected graph");
    if (graph.edge_count() == 0) throw std::invalid_argument("graph game requires >= 1 edge");
  }

  int players() const { return graph.n; }
};

inline GraphGame extend_over_graph(const Game &g, const Graph &h) { return GraphGame(g, h); }

inline nlohmann::json game_to_json(const Game &g) {
  if (!g.materialized())
    throw std::invalid_argument("cannot serialize a lazily evaluated game");
  nlohmann::json j;
  j["label"] = g.label();
  j["questions"] = g.num_questions();
  j["answers"] = g.num_answers();
  auto winning = nlohmann::json::array();
  for (int x1 = 0; x1 < g.num_questions(); ++x1)
    for (int x2 = 0; x2 < g.num_questions(); ++x2)
      for (int a1 = 0; a1 < g.num_answers(); ++a1)
        for (int a2 = 0; a2 < g.num_answers(); ++a2)
          if (g.eval(x1, x2, a1, a2)) winning.push_back({x1, x2, a1, a2});
  j["winning"] = winning;
  if (g.has_weights()) {
    auto w = nlohmann::json::array();
    for (int x1 = 0; x1 < g.num_questions(); ++x1)
      for (int x2 = 0; x2 < g.num_questions(); ++x2) {
        Rat r = g.weight(x1, x2);
        if (r != 0) w.push_back({x1, x2, rat_to_string(r)});
      }
    j["question_weights"] = w;
  }
  return j;
}

inline Game game_from_json(const nlohmann::json &j) {
  Game g(j.at("questions").get<int>(), j.at("answers").get<int>(),
         j.value("label", std::string("game")));
  for (const auto &e : j.at("winning"))
    g.set_entry(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<int>(),
                true);
  if (!g.is_symmetric()) throw std::invalid_argument("game table is not symmetric");
  if (j.contains("question_weights")) {
    int nq = g.num_questions();
    std::vector<Rat> w(static_cast<size_t>(nq) * nq, Rat(0));
    for (const auto &e : j["question_weights"]) {
      int x1 = e.at(0).get<int>(), x2 = e.at(1).get<int>();
      if (x1 < 0 || x1 >= nq || x2 < 0 || x2 >= nq)
        throw std::invalid_argument("weight index out of range");
      w[static_cast<size_t>(x1) * nq + x2] = rat_from_string(e.at(2).get<std::string>());
    }
    g.set_weights(std::move(w));
  }
  return g;
}

}  // namespace nlgg
