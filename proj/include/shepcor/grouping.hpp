#pragma once

#include "shepcor/tensor.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace shepcor {

/// Grouped data as published: class midpoints with frequencies. Midpoints
/// must be strictly increasing and equally spaced up to `spacing_tol`
/// relative noise; the class width is the exact mean spacing. Frequencies
/// may be counts or relative weights; they are normalized exactly, and
/// was_normalized() reports whether the input sum was materially off one.
class Histogram {
 public:
  Histogram(std::vector<Rational> midpoints, std::vector<Rational> frequencies,
            double spacing_tol = 1e-9);

  int classes() const { return static_cast<int>(midpoints_.size()); }
  const std::vector<Rational>& midpoints() const { return midpoints_; }
  /// Normalized weights summing to one.
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& width() const { return width_; }
  bool was_normalized() const { return was_normalized_; }

 private:
  std::vector<Rational> midpoints_;
  std::vector<Rational> weights_;
  Rational width_;
  bool was_normalized_ = false;
};

/// Finite distribution on the lattice (h/m)Z: P(X = s·h/m) = probs[i] for
/// s = support[i]. Probabilities must be nonnegative and sum to one; a sum
/// within 1e-9 of one is renormalized exactly, anything else is rejected.
struct LatticeDist {
  Rational h;
  int m = 1;
  std::vector<long long> support;
  std::vector<Rational> probs;

  void validate_and_normalize();
};

/// Two-axis analogue of LatticeDist: P(X = s1·h1/m1, Y = s2·h2/m2).
struct BivariateLatticeDist {
  Rational h1, h2;
  int m1 = 1, m2 = 1;
  std::vector<std::array<long long, 2>> support;
  std::vector<Rational> probs;

  void validate_and_normalize();
};

/// Absolutely continuous parent for numeric ground truth. Integration runs
/// piecewise between breakpoints; infinite ends are truncated once the
/// remaining weighted tail mass drops below tail_mass.
struct DensityOracle {
  std::function<double(double)> density;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_infinite = false;
  bool upper_infinite = false;
  std::vector<double> breakpoints;
  double quad_tol = 1e-10;
  double tail_mass = 1e-12;
};

DensityOracle uniform_density(double a, double b);
DensityOracle triangular_density(double a, double c, double b);
DensityOracle truncated_normal_density(double mu, double sigma, double a, double b);
DensityOracle normal_density(double mu, double sigma);

/// Empirical raw moments (1/len)·sum x_i^n for n = 0..max_order.
std::vector<double> raw_moments_from_samples(std::span<const double> samples, int max_order);

/// Exact grouped moments sum_i w_i xi_i^n of the histogram's midpoint
/// distribution; the inferred class width is hist.width().
MomentSeq grouped_moments_from_histogram(const Histogram& hist, int max_order);

/// Ground truth for a lattice parent grouped into classes of width h =
/// m lattice steps: exact raw moments and exact grouped moments, the class
/// offsets averaged over the m lattice positions.
std::pair<MomentSeq, MomentSeq> discrete_oracle(const LatticeDist& dist, int max_order);

/// Ground truth for a continuous parent: raw[n] = int t^n f(t) dt and
/// grouped[n] = int f(t)((t+h/2)^{n+1}-(t-h/2)^{n+1})/((n+1)h) dt, the inner
/// class average done in closed form. Throws std::runtime_error when the
/// accumulated quadrature error estimate exceeds the oracle tolerance.
std::pair<std::vector<double>, std::vector<double>> continuous_oracle(const DensityOracle& d,
                                                                      double h, int max_order);

/// Moments of the samples snapped to the lattice of midpoints
/// offset + h·Z (each value to its nearest midpoint).
std::vector<double> lattice_grouped_moments(std::span<const double> samples, double h,
                                            double offset, int max_order);

/// Monte Carlo estimate of the lattice-averaged grouped moments: the
/// grouping lattice is shifted by a fresh uniform offset in (-h/2, h/2)
/// each trial and the per-trial grouped moments are averaged. Per-trial
/// generators are seeded from the master seed, so the result does not
/// depend on evaluation order.
std::vector<double> randomized_lattice_mean(std::span<const double> samples, double h,
                                            int max_order, int trials, std::uint64_t seed);

/// Joint ground truth on the box [0, maxidx]: exact raw and grouped mixed
/// moments, class offsets averaged per axis independently.
std::pair<MomentTensor, MomentTensor> bivariate_discrete_oracle(const BivariateLatticeDist& dist,
                                                                const MultiIndex& maxidx);

} // namespace shepcor
