#include <catch2/catch_amalgamated.hpp>

#include "nlgg/rational.hpp"

using namespace nlgg;

TEST_CASE("rational string round trips") {
  CHECK(rat_to_string(Rat(3, 4)) == "3/4");
  CHECK(rat_to_string(Rat(8, 4)) == "2");
  CHECK(rat_to_string(Rat(-5, 10)) == "-1/2");
  CHECK(rat_from_string("3/4") == Rat(3, 4));
  CHECK(rat_from_string(" -7 / 2 ") == Rat(-7, 2));
  CHECK(rat_from_string("12") == Rat(12));
  CHECK_THROWS_AS(rat_from_string("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
}
