#pragma once

#include "shepcor/rational.hpp"

#include <compare>
#include <vector>

namespace shepcor {

/// Finite moment sequence a_0 = 1, a_1, ..., a_N of an umbra (the values
/// E[alpha^n]). Immutable after construction; index 0 is always 1.
class MomentSeq {
 public:
  MomentSeq() : values_{Rational(1)} {}

  /// Throws std::invalid_argument if values is empty or values[0] != 1.
  explicit MomentSeq(std::vector<Rational> values);

  /// [1, 0, 0, ...]: the sequence of the augmentation umbra, the identity
  /// for binomial convolution.
  static MomentSeq augmentation(int max_order);

  /// [1, 1, 1, ...]: the sequence of the unity umbra.
  static MomentSeq unity(int max_order);

  int max_order() const { return static_cast<int>(values_.size()) - 1; }
  const Rational& operator[](int n) const { return values_[static_cast<std::size_t>(n)]; }
  const std::vector<Rational>& values() const { return values_; }

  bool operator==(const MomentSeq&) const = default;

 private:
  std::vector<Rational> values_;
};

/// Polynomial with exact rational coefficients, ascending degree order.
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(int k) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<Rational> coeffs_;
};

} // namespace shepcor
