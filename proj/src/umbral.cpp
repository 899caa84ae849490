#include "shepcor/umbral.hpp"

#include <algorithm>
#include <stdexcept>

namespace shepcor {

namespace {

void require_order(int n) {
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
}

} // namespace

MomentSeq bernoulli_numbers(int max_order) {
  require_order(max_order);
  std::vector<Rational> b(static_cast<std::size_t>(max_order) + 1);
  b[0] = 1;
  for (int k = 1; k <= max_order; ++k) {
    // sum_{i=0}^{k} C(k+1,i) B_i = 0, solved for B_k; C(k+1,k) = k+1.
    auto row = binomial_row(k + 1);
    Rational acc = 0;
    for (int i = 0; i < k; ++i) acc += Rational(row[i]) * b[i];
    b[k] = -acc / Rational(k + 1);
  }
  return MomentSeq(std::move(b));
}

Polynomial bernoulli_polynomial(int order) {
  require_order(order);
  MomentSeq b = bernoulli_numbers(order);
  auto row = binomial_row(order);
  std::vector<Rational> coeffs(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) coeffs[order - k] = Rational(row[k]) * b[k];
  return Polynomial(std::move(coeffs));
}

MomentSeq convolve(const MomentSeq& a, const MomentSeq& b) {
  int n_max = std::min(a.max_order(), b.max_order());
  std::vector<Rational> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto row = binomial_row(n);
    Rational acc = 0;
    for (int k = 0; k <= n; ++k) acc += Rational(row[k]) * a[k] * b[n - k];
    out[n] = acc;
  }
  return MomentSeq(std::move(out));
}

MomentSeq shift(const MomentSeq& a, const Rational& offset) {
  std::vector<Rational> out(static_cast<std::size_t>(a.max_order()) + 1);
  for (int n = 0; n <= a.max_order(); ++n) {
    auto row = binomial_row(n);
    Rational acc = 0;
    Rational power = 1; // offset^{n-k}, built from k = n downward
    for (int k = n; k >= 0; --k) {
      acc += Rational(row[k]) * a[k] * power;
      power *= offset;
    }
    out[n] = acc;
  }
  return MomentSeq(std::move(out));
}

MomentSeq scale(const MomentSeq& a, const Rational& factor) {
  std::vector<Rational> out(static_cast<std::size_t>(a.max_order()) + 1);
  Rational power = 1;
  for (int n = 0; n <= a.max_order(); ++n) {
    out[n] = power * a[n];
    power *= factor;
  }
  return MomentSeq(std::move(out));
}

MomentSeq inverse_bernoulli_moments(int max_order) {
  require_order(max_order);
  std::vector<Rational> out(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) out[k] = Rational(1, k + 1);
  return MomentSeq(std::move(out));
}

MomentSeq sheppard_coeffs(int max_order) {
  require_order(max_order);
  MomentSeq b = bernoulli_numbers(max_order);
  std::vector<Rational> out(static_cast<std::size_t>(max_order) + 1);
  for (int j = 0; j <= max_order; ++j)
    out[j] = (rational_pow(Rational(2), 1 - j) - 1) * b[j];
  return MomentSeq(std::move(out));
}

MomentSeq centered_uniform_moments(int max_order) {
  require_order(max_order);
  std::vector<Rational> out(static_cast<std::size_t>(max_order) + 1);
  for (int j = 0; j <= max_order; ++j) {
    if (j % 2 == 0)
      out[j] = Rational(1, j + 1) * rational_pow(Rational(1, 2), j);
    else
      out[j] = 0;
  }
  return MomentSeq(std::move(out));
}

Rational integrate_01(const Polynomial& p) {
  Rational acc = 0;
  for (int k = 0; k <= p.degree(); ++k) acc += p.coeff(k) / Rational(k + 1);
  return acc;
}

Polynomial multiplication_theorem_residual(int order, int parts) {
  require_order(order);
  if (parts < 1) throw std::invalid_argument("number of parts must be >= 1");
  MomentSeq b = bernoulli_numbers(order);
  auto row = binomial_row(order);

  // Left side: coefficient of x^{order-k} is C(order,k) B_k / parts^k.
  std::vector<Rational> lhs(static_cast<std::size_t>(order) + 1, Rational(0));
  for (int k = 0; k <= order; ++k)
    lhs[order - k] = Rational(row[k]) * b[k] * rational_pow(Rational(parts), -k);

  // Right side: (1/parts) sum over shifts k/parts of the expanded
  // Bernoulli polynomial sum_j C(order,j) B_j (x + k/parts)^{order-j}.
  std::vector<Rational> rhs(static_cast<std::size_t>(order) + 1, Rational(0));
  for (int shift_idx = 0; shift_idx < parts; ++shift_idx) {
    Rational c(shift_idx, parts);
    for (int j = 0; j <= order; ++j) {
      Rational w = Rational(row[j]) * b[j];
      if (w == 0) continue;
      int p = order - j;
      auto prow = binomial_row(p);
      Rational power = 1; // c^{p-i}, built from i = p downward
      for (int i = p; i >= 0; --i) {
        rhs[i] += w * Rational(prow[i]) * power;
        power *= c;
      }
    }
  }
  for (auto& r : rhs) r /= parts;

  return Polynomial(std::move(lhs)) - Polynomial(std::move(rhs));
}

} // namespace shepcor
