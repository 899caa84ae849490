#pragma once

#include "shepcor/moments.hpp"

namespace shepcor {

/// B_0 .. B_n as a moment sequence (B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...),
/// computed from the defining recurrence sum_{i=0}^{k} C(k+1,i) B_i = 0
/// applied for k >= 1.
MomentSeq bernoulli_numbers(int max_order);

/// The degree-n Bernoulli polynomial B_n(x) = sum_k C(n,k) B_k x^{n-k}.
Polynomial bernoulli_polynomial(int order);

/// Binomial convolution c_n = sum_k C(n,k) a_k b_{n-k}: the moment sequence
/// of a sum of two uncorrelated umbrae. Result order is min(N_a, N_b).
MomentSeq convolve(const MomentSeq& a, const MomentSeq& b);

/// Moments of alpha + c for a scalar c: result[n] = sum_k C(n,k) a_k c^{n-k}.
MomentSeq shift(const MomentSeq& a, const Rational& offset);

/// Moments of h * alpha: result[n] = h^n a_n.
MomentSeq scale(const MomentSeq& a, const Rational& factor);

/// Moments of the inverse Bernoulli umbra: result[k] = 1/(k+1). These are
/// the moments of the uniform distribution on (0,1).
MomentSeq inverse_bernoulli_moments(int max_order);

/// result[j] = (2^{1-j} - 1) B_j, the moments of the half-shifted Bernoulli
/// umbra iota + 1/2. Coefficients of the grouped-to-raw correction.
MomentSeq sheppard_coeffs(int max_order);

/// Moments of the uniform distribution on (-1/2, 1/2): 0 for odd j,
/// (1/(j+1)) (1/2)^j for even j. Coefficients of the raw-to-grouped map.
MomentSeq centered_uniform_moments(int max_order);

/// Exact integral of p over [0,1]: sum_k coeff_k / (k+1).
Rational integrate_01(const Polynomial& p);

/// Difference of the two sides of the Bernoulli multiplication theorem
/// (x + iota/m)^n ~ (1/m) sum_{k<m} (x + k/m + iota)^n, with all umbral
/// moments evaluated exactly. Identically zero when the theorem holds.
Polynomial multiplication_theorem_residual(int order, int parts);

} // namespace shepcor
