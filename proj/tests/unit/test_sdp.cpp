#include <catch2/catch_amalgamated.hpp>

#include "nlgg/sdp.hpp"

using namespace nlgg;

TEST_CASE("two by two correlation bound") {
  // max y such that [[1, y], [y, 1]] >= 0  ->  1
  SdpProblem p;
  p.n = 2;
  p.f0 = symm::identity(2);
  SdpMatrix f;
  f.add_sym(0, 1, 1.0);
  p.fs = {f};
  p.c = {1.0};
  auto r = solve_sdp(p);
  CHECK(r.status == "optimal");
  CHECK(r.primal_obj == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.certified_upper == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.certified_upper >= r.primal_obj - 1e-9);
}

TEST_CASE("three-variable toy problem with known optimum") {
  // max y1 + y2 s.t. [[1 - y1, y2], [y2, 1 + y1]] >= 0
  // det = 1 - y1^2 - y2^2 -> optimum sqrt(2) on the circle
  SdpProblem p;
  p.n = 2;
  p.f0 = symm::identity(2);
  SdpMatrix f1, f2;
  f1.entries.emplace_back(0, 0, -1.0);
  f1.entries.emplace_back(1, 1, 1.0);
  f2.add_sym(0, 1, 1.0);
  p.fs = {f1, f2};
  p.c = {1.0, 1.0};
  auto r = solve_sdp(p);
  CHECK(r.status == "optimal");
  CHECK(r.primal_obj == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
  CHECK(r.certified_upper >= r.primal_obj - 1e-9);
  CHECK(r.slack_min_eig >= -1e-9);
}

TEST_CASE("objective constants pass through") {
  SdpProblem p;
  p.n = 1;
  p.f0 = {1.0};
  SdpMatrix f;
  f.entries.emplace_back(0, 0, -1.0);
  p.fs = {f};
  p.c = {1.0};
  p.c0 = 10.0;
  auto r = solve_sdp(p);  // max y s.t. 1 - y >= 0 -> 1, plus constant 10
  CHECK(r.primal_obj == Catch::Approx(11.0).margin(1e-6));
  CHECK(r.certified_upper == Catch::Approx(11.0).margin(1e-6));
}

TEST_CASE("infeasible start is rejected") {
  SdpProblem p;
  p.n = 1;
  p.f0 = {-1.0};
  SdpMatrix f;
  f.entries.emplace_back(0, 0, 1.0);
  p.fs = {f};
  p.c = {-1.0};
  CHECK_THROWS_AS(solve_sdp(p), std::invalid_argument);
  std::vector<double> y0 = {2.0};  // -1 + 2 = 1 > 0
  auto r = solve_sdp(p, {}, &y0);
  CHECK(r.primal_obj == Catch::Approx(-1.0).margin(1e-6));  // min y with y >= 1
}

TEST_CASE("eigen decomposition of the symmetric kernel") {
  std::vector<double> m = {2, 1, 0, 1, 2, 1, 0, 1, 2};
  std::vector<double> ev, vc;
  symm::eig(m, 3, ev, vc);
  CHECK(ev[0] == Catch::Approx(2 - std::sqrt(2.0)).margin(1e-10));
  CHECK(ev[1] == Catch::Approx(2.0).margin(1e-10));
  CHECK(ev[2] == Catch::Approx(2 + std::sqrt(2.0)).margin(1e-10));
  // residual check on the reconstruction
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += vc[i * 3 + k] * ev[k] * vc[j * 3 + k];
      CHECK(s == Catch::Approx(m[i * 3 + j]).margin(1e-10));
    }
}

TEST_CASE("cholesky and solve") {
  std::vector<double> m = {4, 2, 2, 3};
  std::vector<double> l = m;
  REQUIRE(symm::cholesky(l, 2));
  std::vector<double> x = {10, 8};
  symm::chol_solve(l, 2, x);
  CHECK(4 * x[0] + 2 * x[1] == Catch::Approx(10.0).margin(1e-10));
  CHECK(2 * x[0] + 3 * x[1] == Catch::Approx(8.0).margin(1e-10));
  std::vector<double> notpd = {1, 2, 2, 1};
  CHECK_FALSE(symm::cholesky(notpd, 2));
}
