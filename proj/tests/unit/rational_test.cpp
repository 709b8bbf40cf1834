#include <doctest.h>

#include "pworlds/errors.hpp"
#include "pworlds/rational.hpp"

using namespace pworlds;

TEST_CASE("rational literals parse exactly") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("9/12") == Rational(3, 4)); // canonicalized
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("0.9") == Rational(9, 10));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK(parse_rational("1.50") == Rational(3, 2));
  CHECK(parse_rational("0.001") == Rational(1, 1000));
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
  CHECK_THROWS_AS(parse_rational("-"), ParseError);
}

TEST_CASE("printing: lowest terms, integers bare") {
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_string(ratio(6, 10)) == "3/5");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
}

TEST_CASE("decimal annotation: exact when finite, approximate otherwise") {
  CHECK(to_string_with_decimal(Rational(4, 5)) == "4/5 (= 0.8)");
  CHECK(to_string_with_decimal(Rational(1, 4)) == "1/4 (= 0.25)");
  CHECK(to_string_with_decimal(Rational(1)) == "1");
  CHECK(to_string_with_decimal(Rational(0)) == "0");
  CHECK(to_string_with_decimal(Rational(1, 3)) == "1/3 (~ 0.3333333333)");
  CHECK(to_string_with_decimal(Rational(1, 1000)) == "1/1000 (= 0.001)");
  CHECK(to_string_with_decimal(Rational(1, 99)) == "1/99 (~ 0.0101010101)");
}

TEST_CASE("parse/print round trip") {
  for (const char* text : {"1/2", "3/4", "7", "0", "1/99", "50/99", "81/100"}) {
    Rational q = parse_rational(text);
    CHECK(to_string(q) == text);
    CHECK(parse_rational(to_string(q)) == q);
  }
}
