#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nlgg/quantum.hpp"

using namespace nlgg;

namespace {

// Haar-ish random single-qubit unitary
CMat random_unitary2(std::mt19937 &rng) {
  std::normal_distribution<double> N(0, 1);
  cplx a(N(rng), N(rng)), b(N(rng), N(rng));
  double norm = std::sqrt(std::norm(a) + std::norm(b));
  a /= norm;
  b /= norm;
  CMat u(2, 2);
  u(0, 0) = a;
  u(1, 0) = b;
  u(0, 1) = -std::conj(b);
  u(1, 1) = std::conj(a);
  return u;
}

}  // namespace

TEST_CASE("tsirelson strategy attains the chsh optimum") {
  auto s = make_tsirelson_strategy();
  s.validate();
  GraphGame gg(make_chsh(), path_graph(2));
  CHECK(strategy_value(gg, s) == Catch::Approx(0.5 + 0.5 / std::sqrt(2.0)).margin(1e-9));
  CHECK(chsh_edge_bias(s, 0, 1) == Catch::Approx(2 * std::sqrt(2.0)).margin(1e-9));
}

TEST_CASE("product strategy on the three-party path") {
  // optimal pair on edge AB, third player answers 0 deterministically
  auto ab = make_tsirelson_strategy();
  QuantumStrategy s;
  s.state.dims = {2, 2, 1};
  s.state.pure = std::vector<cplx>(4);
  for (int k = 0; k < 4; ++k) (*s.state.pure)[k] = (*ab.state.pure)[k];
  s.state.rho = outer(*s.state.pure);
  Measurement fixed;
  fixed.num_answers = 2;
  fixed.projectors.emplace_back(0, CMat::identity(1));
  s.meas = {ab.meas[0], ab.meas[1], {fixed, fixed}};
  s.validate();
  GraphGame gg(make_chsh(), path_graph(3));
  double expect = (0.5 + 0.5 / std::sqrt(2.0) + 0.5) / 2;
  CHECK(strategy_value(gg, s) == Catch::Approx(expect).margin(1e-9));
}

TEST_CASE("four-party strategy reproduces the optimal biases") {
  auto s = make_p4_strategy();
  s.validate();
  double outer_bias = 4 * std::sqrt(2.0) / std::sqrt(5.0);
  double inner_bias = 2 * std::sqrt(2.0) / std::sqrt(5.0);
  CHECK(chsh_edge_bias(s, 0, 1) == Catch::Approx(outer_bias).margin(1e-9));
  CHECK(chsh_edge_bias(s, 1, 2) == Catch::Approx(inner_bias).margin(1e-9));
  CHECK(chsh_edge_bias(s, 2, 3) == Catch::Approx(outer_bias).margin(1e-9));
  GraphGame gg(make_chsh(), path_graph(4));
  CHECK(strategy_value(gg, s) == Catch::Approx(0.5 + std::sqrt(10.0) / 12).margin(1e-9));
  CHECK(std::abs(s.state.rho.trace() - cplx(1.0)) < 1e-12);
  // consistency with the quadratic trade-off
  double b1 = chsh_edge_bias(s, 0, 1), b2 = chsh_edge_bias(s, 1, 2);
  CHECK(b1 * b1 + b2 * b2 <= 8.0 + 1e-6);
}

TEST_CASE("the two published state constructions differ; each matches its claim") {
  auto rep = p4_construction_report();
  CHECK_FALSE(rep.constructions_match);
  CHECK(rep.fidelity < 1.0 - 1e-3);
  CHECK(rep.bias_ab == Catch::Approx(4 * std::sqrt(2.0) / std::sqrt(5.0)).margin(1e-9));
  // swap-built state: AD and BC separable, the other four pairs entangled
  CHECK(rep.ppt_swap_built.at("AD") >= -1e-10);
  CHECK(rep.ppt_swap_built.at("BC") >= -1e-10);
  CHECK(rep.ppt_swap_built.at("AB") < -1e-6);
  CHECK(rep.ppt_swap_built.at("CD") < -1e-6);
  CHECK(rep.ppt_swap_built.at("AC") < -1e-6);
  CHECK(rep.ppt_swap_built.at("BD") < -1e-6);
  // amplitude state carries the opposite off-diagonal pattern
  CHECK(rep.ppt_amplitude.at("AC") >= -1e-10);
  CHECK(rep.ppt_amplitude.at("BD") >= -1e-10);
  CHECK(rep.ppt_amplitude.at("AD") < -1e-6);
  CHECK(rep.ppt_amplitude.at("BC") < -1e-6);
}

TEST_CASE("ppt of the maximally entangled pair") {
  DensityMatrix dm = DensityMatrix::from_pure({2, 2}, epr_vector());
  CHECK(ppt_min_eigenvalue(dm, {0}) == Catch::Approx(-0.5).margin(1e-10));
  CHECK_THROWS_AS(ppt_min_eigenvalue(dm, {}), std::invalid_argument);
  CHECK_THROWS_AS(ppt_min_eigenvalue(dm, {0, 1}), std::invalid_argument);
}

TEST_CASE("born probabilities sum to one") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    auto s = make_tsirelson_strategy();
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        auto p = strategy_pair_distribution(s, 0, 1, x, y, 2);
        double sum = p[0] + p[1] + p[2] + p[3];
        CHECK(sum == Catch::Approx(1.0).margin(1e-10));
      }
  }
}

TEST_CASE("strategy value is invariant under local unitaries") {
  std::mt19937 rng(29);
  GraphGame gg(make_chsh(), path_graph(2));
  for (int trial = 0; trial < 8; ++trial) {
    auto s = make_tsirelson_strategy();
    double before = strategy_value(gg, s);
    CMat u0 = random_unitary2(rng), u1 = random_unitary2(rng);
    CMat u = kron(u0, u1);
    std::vector<cplx> psi = *s.state.pure;
    std::vector<cplx> rotated(4, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rotated[i] += u(i, j) * psi[j];
    s.state = DensityMatrix::from_pure({2, 2}, rotated);
    CMat us[2] = {u0, u1};
    for (int p = 0; p < 2; ++p)
      for (auto &m : s.meas[p])
        for (auto &[ans, proj] : m.projectors) proj = us[p] * proj * us[p].adjoint();
    CHECK(strategy_value(gg, s) == Catch::Approx(before).margin(1e-9));
  }
}

TEST_CASE("magic square strategy wins with certainty") {
  auto s = make_magic_square_strategy();
  s.validate();
  GraphGame gg(make_magic_square(), path_graph(2));
  CHECK(strategy_value(gg, s) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("polygamy strategy wins both edges at once") {
  Game ms = make_magic_square();
  auto poly = build_polygamy_strategy(ms, make_magic_square_strategy());
  GraphGame gg(or_compose(ms), path_graph(3));
  auto edges = strategy_edge_values(gg, poly);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == Catch::Approx(1.0).margin(1e-9));
  CHECK(edges[1] == Catch::Approx(1.0).margin(1e-9));

  // the first instance alone is won outright on the first edge
  int na = ms.num_answers(), can = na * na;
  double win1 = 0;
  for (int x1 = 0; x1 < 6; ++x1)
    for (int x2 = 0; x2 < 6; ++x2)
      for (int y1 = 0; y1 < 6; ++y1)
        for (int y2 = 0; y2 < 6; ++y2) {
          auto p = strategy_pair_distribution(poly, 0, 1, x1 * 6 + x2, y1 * 6 + y2, can);
          double w = 0;
          for (int a = 0; a < can; ++a)
            for (int b = 0; b < can; ++b)
              if (ms.eval(x1, y1, a / na, b / na)) w += p[static_cast<size_t>(a) * can + b];
          win1 += w / 1296.0;
        }
  CHECK(win1 == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("polygamy construction rejects imperfect base strategies") {
  CHECK_THROWS_AS(build_polygamy_strategy(make_chsh(), make_tsirelson_strategy()),
                  std::invalid_argument);
}

TEST_CASE("strategy json round trip") {
  auto s = make_tsirelson_strategy();
  auto j = strategy_to_json(s);
  auto back = strategy_from_json(j);
  GraphGame gg(make_chsh(), path_graph(2));
  CHECK(strategy_value(gg, back) == Catch::Approx(strategy_value(gg, s)).margin(1e-12));
}

TEST_CASE("measurement validation catches broken projector sets") {
  auto s = make_tsirelson_strategy();
  s.meas[0][0].projectors[0].second(0, 0) += 0.1;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
