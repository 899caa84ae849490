#include "doctest.h"

#include "shepcor/rational.hpp"

#include <random>
#include <stdexcept>

using namespace shepcor;

TEST_CASE("parse_rational handles integer and fraction forms") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("+5") == Rational(5));
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-691/2730") == Rational(-691, 2730));
  CHECK(parse_rational("4/-6") == Rational(-2, 3));
  CHECK(parse_rational(" 2 / 4 ") == Rational(1, 2));
}

TEST_CASE("parse_rational converts decimals exactly") {
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK(parse_rational("1e3") == Rational(1000));
  CHECK(parse_rational(".25") == Rational(1, 4));
  CHECK(parse_rational("3.") == Rational(3));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("nan"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1 2"), std::invalid_argument);
}

TEST_CASE("format_rational emits canonical p/q") {
  CHECK(format_rational(Rational(1, 2)) == "1/2");
  CHECK(format_rational(Rational(-691, 2730)) == "-691/2730");
  CHECK(format_rational(Rational(4)) == "4");
  CHECK(format_rational(Rational(0)) == "0");
  CHECK(format_rational(parse_rational("4/-6")) == "-2/3");
}

TEST_CASE("rationals stay in canonical form") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 50);
  for (int i = 0; i < 200; ++i) {
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    for (const Rational& r : std::vector<Rational>{a + b, a - b, a * b}) {
      CHECK(denominator(r) > 0);
      CHECK(gcd(abs(numerator(r)), denominator(r)) == 1);
    }
  }
}

TEST_CASE("rational_pow covers negative exponents") {
  CHECK(rational_pow(Rational(2), 10) == Rational(1024));
  CHECK(rational_pow(Rational(2), -3) == Rational(1, 8));
  CHECK(rational_pow(Rational(-2, 3), 2) == Rational(4, 9));
  CHECK(rational_pow(Rational(-2, 3), -1) == Rational(-3, 2));
  CHECK(rational_pow(Rational(0), 0) == Rational(1));
  CHECK(rational_pow(Rational(7, 5), 0) == Rational(1));
  CHECK_THROWS_AS(rational_pow(Rational(0), -1), std::domain_error);
}

namespace {

// Independent factorial-based binomial, cross-checking the Pascal rows.
Integer binomial_by_factorials(int n, int k) {
  auto fact = [](int v) {
    Integer f = 1;
    for (int i = 2; i <= v; ++i) f *= i;
    return f;
  };
  return fact(n) / (fact(k) * fact(n - k));
}

} // namespace

TEST_CASE("binomial rows match the factorial formula") {
  for (int n = 0; n <= 25; ++n) {
    auto row = binomial_row(n);
    REQUIRE(row.size() == static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) CHECK(row[k] == binomial_by_factorials(n, k));
  }
  CHECK(binomial(52, 5) == Integer(2598960));
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(5, -1) == 0);
}
