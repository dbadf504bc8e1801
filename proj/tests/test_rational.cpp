#include "doctest.h"
#include "zq/rational.hpp"

using zq::Rational;
using zq::parse_rational;

TEST_CASE("construction reduces and normalizes signs") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(0, 5) == Rational::integer(0));
  CHECK(Rational(7, 0) == Rational::infinity(+1));
  CHECK(Rational(-7, 0) == Rational::infinity(-1));
  CHECK_THROWS(Rational(0, 0));
}

TEST_CASE("integer shifts") {
  CHECK(Rational(3, 2).plus_int(1) == Rational(5, 2));
  CHECK(Rational(3, 2).plus_int(-2) == Rational(-1, 2));
  CHECK(Rational::integer(4).plus_int(-4) == Rational::integer(0));
  CHECK(Rational::infinity(+1).plus_int(9) == Rational::infinity(+1));
  CHECK(Rational::infinity(-1).plus_int(-9) == Rational::infinity(-1));
}

TEST_CASE("denominator twists") {
  // 3/2 -> 3/(2+3) = 3/5
  CHECK(Rational(3, 2).denominator_twist(+1) == Rational(3, 5));
  // 3/2 -> 3/(2-3) = 3/(-1) = -3
  CHECK(Rational(3, 2).denominator_twist(-1) == Rational::integer(-3));
  // integers stay reduced: 4 = 4/1 -> 4/5
  CHECK(Rational::integer(4).denominator_twist(+1) == Rational(4, 5));
  // hitting q = 0 names an infinity with the numerator's sign
  CHECK(Rational(5, 5).denominator_twist(-1) == Rational::infinity(+1));
  CHECK(Rational(1, 1).denominator_twist(-1) == Rational::infinity(+1));
  // infinity twists to an integer: (+-1)/0 -> (+-1)/(dir*(+-1))
  CHECK(Rational::infinity(+1).denominator_twist(+1) == Rational::integer(1));
  CHECK(Rational::infinity(-1).denominator_twist(+1) == Rational::integer(1));
}

TEST_CASE("twist round trip") {
  for (int p = -9; p <= 9; ++p) {
    for (int q = 1; q <= 5; ++q) {
      if (p == 0 && q != 1) continue;
      Rational r(p, q);
      CHECK(r.denominator_twist(+1).denominator_twist(-1) == r);
      CHECK(r.denominator_twist(-1).denominator_twist(+1) == r);
    }
  }
}

TEST_CASE("printing") {
  CHECK(Rational::integer(7).str() == "7");
  CHECK(Rational(-3, 2).str() == "-3/2");
  CHECK(Rational::infinity(+1).str() == "inf");
  CHECK(Rational::infinity(-1).str() == "-inf");
}

TEST_CASE("parsing") {
  CHECK(parse_rational("7") == Rational::integer(7));
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("inf") == Rational::infinity(+1));
  CHECK(parse_rational("+inf") == Rational::infinity(+1));
  CHECK(parse_rational("-inf") == Rational::infinity(-1));
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("0/0").has_value());
  CHECK_FALSE(parse_rational("4/0").has_value());
  CHECK_FALSE(parse_rational("three").has_value());
  CHECK_FALSE(parse_rational("1/2/3").has_value());
}
