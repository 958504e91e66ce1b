#include "doctest.h"

#include "dqm/errors.hpp"
#include "dqm/rational.hpp"

using dqm::Rational;

TEST_CASE("rational arithmetic stays reduced") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(-Rational(1, 3) == Rational(-1, 3));
}

TEST_CASE("rational comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(5) >= Rational(5));
  CHECK(Rational(7, 3) > Rational(2));
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("321").to_string() == "321");
  CHECK(Rational(16, 3).to_string() == "16/3");
  CHECK_THROWS_AS(Rational::parse("abc"), dqm::Error);
  CHECK_THROWS_AS(Rational::parse(""), dqm::Error);
  CHECK_THROWS_AS(Rational(1, 0), dqm::Error);
}

TEST_CASE("rational overflow is detected, not wrapped") {
  const long long big = 4'000'000'000'000'000'000LL;
  CHECK_THROWS_AS(Rational(big) * Rational(big), dqm::Error);
  CHECK_NOTHROW(Rational(big, big));  // reduces to 1
}
