#include <cmath>

#include "doctest.h"
#include "sepcut/format.hpp"

using namespace sepcut;

TEST_CASE("g10 prints 10 significant digits") {
  CHECK(g10(std::log(100.0) / 2.0) == "2.302585093");
  CHECK(g10(100.0) == "100");
  CHECK(g10(0.5) == "0.5");
  CHECK(g10(1.0 / 3.0) == "0.3333333333");
  CHECK(g10(0.0) == "0");
  CHECK(round10(1.0 / 3.0) == 0.3333333333);
  CHECK(round10(2.0) == 2.0);
}

TEST_CASE("parse_grid endpoints are inclusive within half a step") {
  const auto a = parse_grid("-3:3:0.5");
  REQUIRE(a.size() == 13);
  CHECK(a.front() == -3.0);
  CHECK(a.back() == 3.0);

  // 1.2 is more than half a step past 1, so it is out
  const auto b = parse_grid("0:1:0.3");
  REQUIRE(b.size() == 4);
  CHECK(b.back() == doctest::Approx(0.9).epsilon(1e-15));

  const auto c = parse_grid("0:1:0.25");
  REQUIRE(c.size() == 5);
  CHECK(c.back() == 1.0);

  const auto single = parse_grid("2:2:1");
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 2.0);
}

TEST_CASE("parse_grid rejects malformed specs") {
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("3:-3:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:-0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("grid"), std::invalid_argument);
}
