#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unordered_set>

#include "fekete/error.hpp"
#include "fekete/rational.hpp"

using fekete::Rational;

TEST_CASE("parse accepts integers and fractions") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("+2/4") == Rational(1, 2));
  CHECK(Rational::parse("-6/3") == Rational(-2));
  CHECK(Rational::parse("123456789012345678901234567890/3").to_string() == "41152263004115226300411522630");
}

TEST_CASE("parse rejects malformed numbers") {
  for (const char* bad : {"", "1.5", "1/0", "abc", "1/", "/2", "1/-2", "2//3", "1e3", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), fekete::ParseError);
  }
}

TEST_CASE("canonical form after every operation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int trial = 0; trial < 2000; ++trial) {
    const Rational x(num(rng), den(rng));
    const Rational y(num(rng), den(rng));
    for (const Rational& r : {x + y, x - y, x * y, y.sign() != 0 ? x / y : x}) {
      CHECK(r.denominator() > 0);
      CHECK(gcd(mpz_class(abs(r.numerator())), r.denominator()) == 1);
    }
  }
}

TEST_CASE("to_string renders p/q and plain integers") {
  CHECK(Rational(6, 4).to_string() == "3/2");
  CHECK(Rational(-6, 4).to_string() == "-3/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational(0, 5).to_string() == "0");
}

TEST_CASE("floor and ceil round toward the correct side") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(5).floor() == 5);
  CHECK(Rational(5).ceil() == 5);
}

TEST_CASE("ordering and pow") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(pow(Rational(5, 2), 4) == Rational(625, 16));
  CHECK(pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK(pow(Rational(7, 3), 0) == Rational(1));
}

TEST_CASE("division by zero is a domain error") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), fekete::DomainError);
  CHECK_THROWS_AS(Rational(1, 0), fekete::DomainError);
}

TEST_CASE("equal values hash equally") {
  std::unordered_set<Rational> set;
  set.insert(Rational(2, 4));
  CHECK(set.contains(Rational(1, 2)));
  CHECK(set.contains(Rational(3, 6)));
  CHECK_FALSE(set.contains(Rational(-1, 2)));
}
