#include <doctest.h>

#include "ivnet/rational.hpp"

using namespace ivnet;

TEST_CASE("decimal, exponent and fraction forms parse exactly") {
  CHECK(parse_rational("512") == 512);
  CHECK(parse_rational("2.4e9") == Rational(2'400'000'000));
  CHECK(parse_rational("0.008") == make_rational(1, 125));
  CHECK(parse_rational("-1.5") == make_rational(-3, 2));
  CHECK(parse_rational("3/12") == make_rational(1, 4));
  CHECK(parse_rational("1e-6") == make_rational(1, 1'000'000));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("12x"), std::invalid_argument);
}

TEST_CASE("decimal rendering rounds half up") {
  CHECK(to_decimal(make_rational(21580062720, 1'000'000), 2) == "21580.06");
  CHECK(to_decimal(make_rational(5, 2), 0) == "3");
  CHECK(to_decimal(make_rational(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(make_rational(1, 3), 4) == "0.3333");
}

TEST_CASE("significant-figure rendering carries into a new digit") {
  CHECK(to_significant(make_rational(9996, 100), 3) == "100");
  CHECK(to_significant(make_rational(21580, 1000), 3) == "21.6");
  CHECK(to_significant(Rational(129920), 3) == "130000");
  CHECK(to_significant(make_rational(-512, 100), 2) == "-5.1");
}

TEST_CASE("unit-aware rendering") {
  CHECK(format_bits(512) == "512 b");
  CHECK(format_bits(129920) == "130 kb");
  CHECK(format_seconds(make_rational(512, 100'000'000)) == "5.12 us");
  CHECK(format_seconds(make_rational(13, 10000)) == "1.3 ms");
  CHECK(format_seconds(make_rational(512, 10'000'000'000)) == "51.2 ns");
  CHECK(format_seconds(0) == "0 s");
}

TEST_CASE("floor and ceiling to integers") {
  CHECK(ceil_to_integer(make_rational(2158006272, 100000)) == 21581);
  CHECK(floor_to_integer(make_rational(-3, 2)) == -2);
  CHECK(ceil_to_integer(make_rational(-3, 2)) == -1);
}
