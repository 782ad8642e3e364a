#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nlgg/ncpoly.hpp"

using namespace nlgg;

TEST_CASE("extension field arithmetic") {
  ExtScalar a(Rat(1, 2), Rat(1, 3), Rat(-2), Rat(0));
  ExtScalar b(Rat(0), Rat(1), Rat(1, 7), Rat(2));
  CHECK((a * b).to_double() == Catch::Approx(a.to_double() * b.to_double()).margin(1e-12));
  CHECK((a + b).to_double() == Catch::Approx(a.to_double() + b.to_double()).margin(1e-12));
  CHECK((a * a.inverse()) == ExtScalar(Rat(1)));
  CHECK((b / b) == ExtScalar(Rat(1)));
  CHECK(ExtScalar::sqrt2() * ExtScalar::sqrt5() == ExtScalar::sqrt10());
  CHECK(ExtScalar::sqrt10() * ExtScalar::sqrt10() == ExtScalar(Rat(10)));
  CHECK_THROWS_AS(ExtScalar().inverse(), std::domain_error);
}

TEST_CASE("field embedding on random expressions") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    ExtScalar x(Rat(d(rng), 1 + std::abs(d(rng))), Rat(d(rng), 7), Rat(d(rng), 3), Rat(d(rng), 5));
    ExtScalar y(Rat(d(rng)), Rat(d(rng), 2), Rat(d(rng), 9), Rat(d(rng), 4));
    ExtScalar z = x * y - y * x;  // commutativity
    CHECK(z.is_zero());
    CHECK((x * y + x).to_double() ==
          Catch::Approx(x.to_double() * y.to_double() + x.to_double()).margin(1e-10));
  }
}

TEST_CASE("involution and commutation rewriting") {
  auto A0 = NcPolynomial::letter(0, 0);
  auto A1 = NcPolynomial::letter(0, 1);
  auto B0 = NcPolynomial::letter(1, 0);
  CHECK(nc_mul(A0, A0) == NcPolynomial::one());
  CHECK(nc_mul(A0, B0) == nc_mul(B0, A0));
  CHECK(nc_mul(nc_mul(A0, A1), nc_mul(A1, A0)) == NcPolynomial::one());
  CHECK_FALSE(nc_mul(A0, A1) == nc_mul(A1, A0));  // same party does not commute
}

TEST_CASE("canonicalization is confluent under random reassociation") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    int len = 1 + rng() % 8;
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(make_letter(rng() % 3, rng() % 2));
    // multiply letters in random association orders; the canonical result
    // must not depend on the order the products are taken in
    std::vector<NcPolynomial> factors;
    for (Letter l : w) factors.push_back(NcPolynomial::letter(letter_party(l), letter_setting(l)));
    while (factors.size() > 1) {
      size_t i = rng() % (factors.size() - 1);
      NcPolynomial prod = factors[i] * factors[i + 1];
      factors.erase(factors.begin() + i + 1);
      factors[i] = prod;
    }
    NcPolynomial direct;
    direct.add_term(w, ExtScalar(Rat(1)));
    CHECK(factors[0] == direct);
  }
}

TEST_CASE("adjoint is an antihomomorphism") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    NcPolynomial p, q;
    for (int t = 0; t < 3; ++t) {
      Word w1, w2;
      for (int i = 0, n = rng() % 4; i < n; ++i) w1.push_back(make_letter(rng() % 3, rng() % 2));
      for (int i = 0, n = rng() % 4; i < n; ++i) w2.push_back(make_letter(rng() % 3, rng() % 2));
      p.add_term(w1, ExtScalar(Rat(static_cast<int>(rng() % 7) - 3)));
      q.add_term(w2, ExtScalar(Rat(static_cast<int>(rng() % 7) - 3)));
    }
    CHECK((p * q).adjoint() == q.adjoint() * p.adjoint());
  }
}

TEST_CASE("bell chain term counts") {
  CHECK(bell_chain(3).num_terms() == 8);
  CHECK(bell_chain(4).num_terms() == 12);
  CHECK(bell_chain(6).num_terms() == 20);
  CHECK_THROWS_AS(bell_chain(1), std::invalid_argument);
}

TEST_CASE("expression parser") {
  auto p = parse_polynomial("A0B0 + A0B1 + A1B0 - A1B1");
  CHECK(p == chsh_bell_operator(0, 1));
  auto q = parse_polynomial("1/2 * (A0 + B1) - sqrt2 A0");
  CHECK(q.coeff({make_letter(0, 0)}) == ExtScalar(Rat(1, 2)) - ExtScalar::sqrt2());
  CHECK(q.coeff({make_letter(1, 1)}) == ExtScalar(Rat(1, 2)));
  CHECK(parse_polynomial("sqrt10 - sqrt2*sqrt5").is_zero());
  CHECK(parse_polynomial("A0A0").num_terms() == 1);  // reduces to 1
  CHECK_THROWS_AS(parse_polynomial("A"), std::invalid_argument);
  CHECK_THROWS_AS(parse_polynomial("2 +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_polynomial("(A0"), std::invalid_argument);
}

TEST_CASE("empty identity verifies") {
  auto v = verify_sos(NcPolynomial(), {});
  CHECK(v.exact_match);
}

TEST_CASE("three-party identity verifies exactly") {
  auto id = p3_sos_identity();
  auto v = verify_sos_weighted(id.target, id.squares);
  CHECK(v.exact_match);
  CHECK(v.residual.is_zero());
  CHECK(v.all_hermitian);
}

TEST_CASE("printed four-party identity fails as written, balances reweighted") {
  auto printed = p4_sos_identity_printed();
  auto vp = verify_sos_weighted(printed.target, printed.squares);
  CHECK_FALSE(vp.exact_match);
  CHECK_FALSE(vp.scale.has_value());
  CHECK(vp.residual.num_terms() > 0);

  auto work = p4_sos_identity();
  auto vw = verify_sos_weighted(work.target, work.squares);
  CHECK(vw.exact_match);
}

TEST_CASE("global scale detection") {
  auto id = p3_sos_identity();
  NcPolynomial doubled = id.target * ExtScalar(Rat(2));
  auto v = verify_sos_weighted(doubled, id.squares);
  CHECK_FALSE(v.exact_match);
  REQUIRE(v.scale.has_value());
  CHECK(*v.scale == ExtScalar(Rat(2)));
}

TEST_CASE("certified bounds from exact identities") {
  auto p3 = p3_sos_identity();
  std::vector<WeightedSquare> doubled;
  for (auto ws : p3.squares) {
    ws.weight = ws.weight * ExtScalar(Rat(2));
    doubled.push_back(ws);
  }
  auto cb = certified_bound_from_sos(doubled, p3.bell, ExtScalar(Rat(4)), 2);
  CHECK(cb.probability_bound == ExtScalar(Rat(3, 4)));

  auto p4 = p4_sos_identity();
  auto cb4 = certified_bound_from_sos(p4.squares, p4.bell, p4.constant, 3);
  // exactly 1/2 + sqrt10/12
  CHECK(cb4.probability_bound == ExtScalar(Rat(1, 2)) + ExtScalar::sqrt10() * ExtScalar(Rat(1, 12)));
  CHECK(cb4.probability_double == Catch::Approx(0.5 + std::sqrt(10.0) / 12).margin(1e-12));

  // scaling all squares by sqrt2 doubles the certified constant
  std::vector<WeightedSquare> scaled;
  for (auto ws : doubled) {
    ws.weight = ws.weight * ExtScalar(Rat(2));  // (sqrt2 s)^* (sqrt2 s) = 2 s^* s
    scaled.push_back(ws);
  }
  auto cb2 = certified_bound_from_sos(scaled, p3.bell * ExtScalar(Rat(2)), ExtScalar(Rat(8)), 2);
  CHECK(cb2.bias_constant == ExtScalar(Rat(8)));

  // verification failure propagates
  CHECK_THROWS_AS(certified_bound_from_sos(doubled, p3.bell, ExtScalar(Rat(5)), 2),
                  std::invalid_argument);
}
