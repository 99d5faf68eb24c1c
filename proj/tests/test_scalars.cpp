#include "chir/scalars.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chir;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == Rat(1, 2));
  CHECK(parse_rational("-1.25") == Rat(-5, 4));
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK(parse_rational("0.125") == Rat(1, 8));
  CHECK(parse_rational("+.5") == Rat(1, 2));
  CHECK(parse_rational("22/7") == Rat(22, 7));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("rational formatting round-trips") {
  for (const char* s : {"-20/21", "0", "5", "1/2"}) {
    CHECK(format_rational(parse_rational(s)) == s);
  }
}

TEST_CASE("dyadic lift of doubles is exact") {
  for (double x : {0.5, -0.125, 1.0, 3.141592653589793, -1e-9, 0.0, 1e20}) {
    CHECK(to_double(rat_from_double(x)) == x);
  }
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(-0.75) == Rat(-3, 4));
  CHECK_THROWS_AS(rat_from_double(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("gaussian rational arithmetic") {
  CRat i(Rat(0), Rat(1));
  CHECK(i * i == CRat(Rat(-1)));
  CRat z(Rat(1, 2), Rat(-1, 3));
  CHECK(conj(z) == CRat(Rat(1, 2), Rat(1, 3)));
  CHECK(z * conj(z) == CRat(Rat(1, 4) + Rat(1, 9)));
  CRat w = z / z;
  CHECK(w == CRat(Rat(1)));
  CHECK_THROWS_AS(z / CRat(Rat(0)), std::domain_error);
  CHECK(norm1(z) == Rat(5, 6));
}

TEST_CASE("rational powers") {
  CHECK(rat_pow(Rat(3, 2), 4) == Rat(81, 16));
  CHECK(rat_pow(Rat(2), -3) == Rat(1, 8));
  CHECK(rat_pow(Rat(7), 0) == Rat(1));
}
