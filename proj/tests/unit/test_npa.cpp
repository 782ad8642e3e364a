#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nlgg/bounds.hpp"
#include "nlgg/npa.hpp"
#include "nlgg/quantum.hpp"

using namespace nlgg;

TEST_CASE("level descriptors") {
  CHECK(NpaLevel::parse("1").to_string() == "1");
  CHECK(NpaLevel::parse("1+edge-pairs").to_string() == "1+edge-pairs");
  CHECK(NpaLevel::parse("2+triples").to_string() == "2+triples");
  CHECK_THROWS_AS(NpaLevel::parse("4"), std::invalid_argument);
}

TEST_CASE("moment matrix sizes") {
  Game chsh = make_chsh();
  auto mp1 = build_moment_problem(GraphGame(chsh, path_graph(2)), NpaLevel::parse("1"));
  CHECK(mp1.size == 5);  // identity + four letters

  auto mp2 = build_moment_problem(GraphGame(chsh, path_graph(3)), NpaLevel::parse("1+edge-pairs"));
  CHECK(mp2.size == 15);  // 1 + 6 letters + 8 edge words

  // independent combinatorial count for the full level-2 basis on the
  // six-party path: 1 + letters + same-party ordered pairs + cross pairs
  auto mp3 = build_moment_problem(GraphGame(chsh, path_graph(6)), NpaLevel::parse("2"));
  int parties = 6, settings = 2;
  int letters = parties * settings;
  int same_party = parties * settings * (settings - 1);
  int cross = parties * (parties - 1) / 2 * settings * settings;
  CHECK(mp3.size == 1 + letters + same_party + cross);
}

TEST_CASE("diagonal entries all belong to the normalization class") {
  auto mp = build_moment_problem(GraphGame(make_chsh(), path_graph(3)), NpaLevel::parse("2"));
  for (int i = 0; i < mp.size; ++i)
    CHECK(mp.entry_class[static_cast<size_t>(i) * mp.size + i] == mp.one_class);
}

TEST_CASE("non-binary games are rejected") {
  CHECK_THROWS_AS(build_moment_problem(GraphGame(make_magic_square(), path_graph(2)),
                                       NpaLevel::parse("1")),
                  std::invalid_argument);
}

TEST_CASE("explicit strategies give feasible moment points") {
  Game chsh = make_chsh();
  struct CaseDef {
    GraphGame gg;
    QuantumStrategy s;
  };
  std::vector<CaseDef> cases;
  cases.push_back({GraphGame(chsh, path_graph(2)), make_tsirelson_strategy()});
  cases.push_back({GraphGame(chsh, path_graph(4)), make_p4_strategy()});
  for (auto &[gg, s] : cases) {
    auto mp = build_moment_problem(gg, NpaLevel::parse("2"));
    auto x = strategy_moments(mp, [&](const Word &w) {
      std::vector<std::pair<int, int>> letters;
      for (Letter l : w) letters.emplace_back(letter_party(l), letter_setting(l));
      return expectation_of_observable_word(s, letters);
    });
    // moment matrix of the strategy is PSD
    std::vector<double> M(static_cast<size_t>(mp.size) * mp.size);
    for (int i = 0; i < mp.size; ++i)
      for (int j = 0; j < mp.size; ++j)
        M[static_cast<size_t>(i) * mp.size + j] = x[mp.entry_class[static_cast<size_t>(i) * mp.size + j]];
    CHECK(symm::min_eig(M, mp.size) >= -1e-9);
    // and its objective value equals the strategy value
    double val = mp.c0;
    for (int k = 0; k < mp.num_classes; ++k) val += mp.obj[k] * x[k];
    CHECK(val == Catch::Approx(strategy_value(gg, s)).margin(1e-9));
  }
}

TEST_CASE("hierarchy levels are monotone") {
  GraphGame gg(make_chsh(), path_graph(3));
  double b1 = quantum_upper_bound(gg, NpaLevel::parse("1"), 1e-8).bound;
  double b1e = quantum_upper_bound(gg, NpaLevel::parse("1+edge-pairs"), 1e-8).bound;
  double b2 = quantum_upper_bound(gg, NpaLevel::parse("2"), 1e-8).bound;
  CHECK(b1e <= b1 + 1e-6);
  CHECK(b2 <= b1e + 1e-6);
}

TEST_CASE("chsh bounds at the first levels") {
  double ts = 0.5 + 0.5 / std::sqrt(2.0);
  auto b2 = quantum_upper_bound(GraphGame(make_chsh(), path_graph(2)), NpaLevel::parse("1"));
  CHECK(b2.bound == Catch::Approx(ts).margin(1e-5));
  CHECK(b2.status == "optimal");
  auto b3 = quantum_upper_bound(GraphGame(make_chsh(), path_graph(3)),
                                NpaLevel::parse("1+edge-pairs"));
  CHECK(b3.bound == Catch::Approx(0.75).margin(1e-4));
  // dual bound dominates every strategy value
  CHECK(b2.bound + 1e-6 >=
        strategy_value(GraphGame(make_chsh(), path_graph(2)), make_tsirelson_strategy()));
}

TEST_CASE("sos constants match the sdp bounds") {
  auto b3 = quantum_upper_bound(GraphGame(make_chsh(), path_graph(3)), NpaLevel::parse("2"));
  CHECK(b3.bound == Catch::Approx(0.75).margin(1e-4));
  auto b4 = quantum_upper_bound(GraphGame(make_chsh(), path_graph(4)), NpaLevel::parse("2"));
  CHECK(b4.bound == Catch::Approx(0.5 + std::sqrt(10.0) / 12).margin(1e-4));
}

TEST_CASE("odd cycle bound on the triangle configuration") {
  auto b = quantum_upper_bound(GraphGame(make_odd_cycle(3), path_graph(3)),
                               NpaLevel::parse("1+edge-pairs"));
  CHECK(b.bound <= 5.0 / 6 + 1e-3);
}

TEST_CASE("cycle value bounded by the path value") {
  auto bc3 = quantum_upper_bound(GraphGame(make_chsh(), cycle_graph(3)), NpaLevel::parse("2"));
  auto bp3 = quantum_upper_bound(GraphGame(make_chsh(), path_graph(3)), NpaLevel::parse("2"));
  CHECK(bc3.bound <= bp3.bound + 1e-6);
}
