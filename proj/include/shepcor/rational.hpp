#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace shepcor {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number; always kept in canonical form (positive
/// denominator, gcd(numerator, denominator) = 1).
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q", or decimal/scientific text ("-0.5", "2.5e-3") into an
/// exact rational. Every finite decimal literal converts without rounding.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// base^exp for any integer exponent; throws std::domain_error for
/// 0^negative. 0^0 = 1.
Rational rational_pow(const Rational& base, long exp);

/// Row n of Pascal's triangle: C(n,0) .. C(n,n).
std::vector<Integer> binomial_row(int n);

Integer binomial(int n, int k);

} // namespace shepcor
