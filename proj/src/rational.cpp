#include "shepcor/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace shepcor {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_input(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

Integer parse_integer(std::string_view text, std::string_view whole) {
  text = trim(text);
  if (text.empty()) bad_input(whole);
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) bad_input(whole);
  Integer value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') bad_input(whole);
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  Integer digits = 0;
  long frac_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad_input(whole);

  long exp10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) bad_input(whole);
    long e = 0;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9') bad_input(whole);
      e = e * 10 + (c - '0');
      if (e > 100000) bad_input(whole);
    }
    exp10 = exp_neg ? -e : e;
  }
  if (pos != text.size()) bad_input(whole);

  exp10 -= frac_digits;
  Rational value(digits);
  if (exp10 > 0) {
    value *= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exp10)));
  } else if (exp10 < 0) {
    value /= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-exp10)));
  }
  return negative ? -value : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_input(text);
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (den < 0) { // cpp_rational requires a positive denominator
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  }
  return parse_decimal(s, text);
}

std::string format_rational(const Rational& value) {
  return value.str();
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0 && exp < 0) throw std::domain_error("zero base with negative exponent");
  Rational result = 1;
  Rational b = base;
  if (exp < 0) {
    Integer num = numerator(base);
    Integer den = denominator(base);
    if (num < 0) { // keep the denominator positive after the swap
      num = -num;
      den = -den;
    }
    b = Rational(den, num);
  }
  long e = exp > 0 ? exp : -exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

std::vector<Integer> binomial_row(int n) {
  if (n < 0) throw std::invalid_argument("binomial row order must be nonnegative");
  std::vector<Integer> row{1};
  row.reserve(n + 1);
  for (int r = 1; r <= n; ++r) {
    std::vector<Integer> next(r + 1);
    next[0] = 1;
    next[r] = 1;
    for (int k = 1; k < r; ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }
  return row;
}

Integer binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial order must be nonnegative");
  if (k < 0 || k > n) return 0;
  return binomial_row(n)[k];
}

} // namespace shepcor
