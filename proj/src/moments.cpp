#include "shepcor/moments.hpp"

#include <algorithm>
#include <stdexcept>

namespace shepcor {

MomentSeq::MomentSeq(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("moment sequence must not be empty");
  if (values_.front() != 1)
    throw std::invalid_argument("moment sequence must start with a_0 = 1");
}

MomentSeq MomentSeq::augmentation(int max_order) {
  if (max_order < 0) throw std::invalid_argument("max order must be nonnegative");
  std::vector<Rational> v(static_cast<std::size_t>(max_order) + 1, Rational(0));
  v[0] = 1;
  return MomentSeq(std::move(v));
}

MomentSeq MomentSeq::unity(int max_order) {
  if (max_order < 0) throw std::invalid_argument("max order must be nonnegative");
  return MomentSeq(std::vector<Rational>(static_cast<std::size_t>(max_order) + 1, Rational(1)));
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < coeffs_.size()) out[i] += coeffs_[i];
    if (i < other.coeffs_.size()) out[i] += other.coeffs_[i];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
  std::vector<Rational> out(coeffs_);
  for (auto& c : out) c = -c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + (-other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial();
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(out));
}

} // namespace shepcor
