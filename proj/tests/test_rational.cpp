#include <doctest.h>

#include "hurwitz/rational.hpp"

using hurwitz::Rat;

TEST_CASE("Rat normalization and arithmetic") {
  CHECK(Rat(6, 4) == Rat(3, 2));
  CHECK(Rat(-6, 4) == Rat(-3, 2));
  CHECK(Rat(6, -4) == Rat(-3, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(2, 3) / Rat(4, 9) == Rat(3, 2));
  CHECK(-Rat(5, 7) == Rat(-5, 7));
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("Rat ordering, floor, ceil") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(7, 2).ceil() == 4);
  CHECK(Rat(-7, 2).ceil() == -3);
  CHECK(Rat(4).floor() == 4);
  CHECK(Rat(4).ceil() == 4);
  CHECK(Rat::min(Rat(1, 2), Rat(1, 3)) == Rat(1, 3));
  CHECK(Rat::max(Rat(1, 2), Rat(1, 3)) == Rat(1, 2));
}

TEST_CASE("Rat strings and integer access") {
  CHECK(Rat(17).str() == "17");
  CHECK(Rat(6, 5).str() == "6/5");
  CHECK(Rat(-11, 2).str() == "-11/2");
  CHECK(Rat(12, 4).as_integer() == 3);
  CHECK_THROWS_AS(Rat(1, 2).as_integer(), std::domain_error);
}

TEST_CASE("Rat overflow is detected, not wrapped") {
  Rat big(1LL << 62);
  CHECK_THROWS_AS(big * Rat(4), std::overflow_error);
}
