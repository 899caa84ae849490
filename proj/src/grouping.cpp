#include "shepcor/grouping.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace shepcor {

namespace {

Rational checked_sum(const std::vector<Rational>& probs) {
  Rational sum = 0;
  for (const Rational& p : probs) {
    if (p < 0) throw std::invalid_argument("probabilities must be nonnegative");
    sum += p;
  }
  if (sum == 0) throw std::invalid_argument("total probability must be positive");
  return sum;
}

/// Accept exact unity, renormalize tiny float noise, reject the rest.
void normalize_probs(std::vector<Rational>& probs) {
  Rational sum = checked_sum(probs);
  if (sum == 1) return;
  if (std::abs(to_double(sum) - 1.0) > 1e-9)
    throw std::invalid_argument("probabilities must sum to one");
  for (Rational& p : probs) p /= sum;
}

/// powers[n] = base^n for n = 0..max_order.
std::vector<Rational> power_table(const Rational& base, int max_order) {
  std::vector<Rational> powers(static_cast<std::size_t>(max_order) + 1);
  powers[0] = 1;
  for (int n = 1; n <= max_order; ++n) powers[static_cast<std::size_t>(n)] = powers[n - 1] * base;
  return powers;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

Histogram::Histogram(std::vector<Rational> midpoints, std::vector<Rational> frequencies,
                     double spacing_tol)
    : midpoints_(std::move(midpoints)) {
  if (midpoints_.size() < 2)
    throw std::invalid_argument("histogram needs at least two classes");
  if (midpoints_.size() != frequencies.size())
    throw std::invalid_argument("histogram needs one frequency per midpoint");
  for (std::size_t i = 1; i < midpoints_.size(); ++i)
    if (midpoints_[i] <= midpoints_[i - 1])
      throw std::invalid_argument("histogram midpoints must be strictly increasing");

  int gaps = static_cast<int>(midpoints_.size()) - 1;
  width_ = (midpoints_.back() - midpoints_.front()) / gaps;
  double w = to_double(width_);
  for (std::size_t i = 1; i < midpoints_.size(); ++i) {
    double gap = to_double(midpoints_[i] - midpoints_[i - 1]);
    if (std::abs(gap - w) > spacing_tol * w)
      throw std::invalid_argument("histogram midpoints are not equally spaced");
  }

  Rational sum = checked_sum(frequencies);
  was_normalized_ = std::abs(to_double(sum) - 1.0) > 1e-9;
  weights_ = std::move(frequencies);
  if (sum != 1)
    for (Rational& weight : weights_) weight /= sum;
}

void LatticeDist::validate_and_normalize() {
  if (h <= 0) throw std::invalid_argument("grouping width h must be positive");
  if (m < 1) throw std::invalid_argument("lattice divisor m must be >= 1");
  if (support.empty() || support.size() != probs.size())
    throw std::invalid_argument("lattice distribution needs matching support and probs");
  std::vector<long long> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("lattice support points must be distinct");
  normalize_probs(probs);
}

void BivariateLatticeDist::validate_and_normalize() {
  if (h1 <= 0 || h2 <= 0) throw std::invalid_argument("grouping width h must be positive");
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("lattice divisor m must be >= 1");
  if (support.empty() || support.size() != probs.size())
    throw std::invalid_argument("lattice distribution needs matching support and probs");
  std::vector<std::array<long long, 2>> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("lattice support points must be distinct");
  normalize_probs(probs);
}

DensityOracle uniform_density(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform density needs a < b");
  DensityOracle d;
  d.density = [a, b](double t) { return (t < a || t > b) ? 0.0 : 1.0 / (b - a); };
  d.lower = a;
  d.upper = b;
  return d;
}

DensityOracle triangular_density(double a, double c, double b) {
  if (!(a < b) || c < a || c > b)
    throw std::invalid_argument("triangular density needs a <= c <= b with a < b");
  DensityOracle d;
  d.density = [a, c, b](double t) {
    if (t < a || t > b) return 0.0;
    if (t < c) return 2.0 * (t - a) / ((b - a) * (c - a));
    if (t > c) return 2.0 * (b - t) / ((b - a) * (b - c));
    return 2.0 / (b - a);
  };
  d.lower = a;
  d.upper = b;
  d.breakpoints = {c};
  return d;
}

DensityOracle truncated_normal_density(double mu, double sigma, double a, double b) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (!(a < b)) throw std::invalid_argument("truncation needs a < b");
  double z = normal_cdf((b - mu) / sigma) - normal_cdf((a - mu) / sigma);
  if (!(z > 0)) throw std::invalid_argument("truncation window carries no mass");
  DensityOracle d;
  d.density = [mu, sigma, a, b, z](double t) {
    if (t < a || t > b) return 0.0;
    double u = (t - mu) / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(kTwoPi) * z);
  };
  d.lower = a;
  d.upper = b;
  return d;
}

DensityOracle normal_density(double mu, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  DensityOracle d;
  d.density = [mu, sigma](double t) {
    double u = (t - mu) / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(kTwoPi));
  };
  d.lower_infinite = true;
  d.upper_infinite = true;
  return d;
}

std::vector<double> raw_moments_from_samples(std::span<const double> samples, int max_order) {
  if (samples.empty()) throw std::invalid_argument("sample set must not be empty");
  if (max_order < 0) throw std::invalid_argument("order must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (double x : samples) {
    double p = 1.0;
    for (int n = 0; n <= max_order; ++n) {
      out[static_cast<std::size_t>(n)] += p;
      p *= x;
    }
  }
  for (double& v : out) v /= static_cast<double>(samples.size());
  return out;
}

MomentSeq grouped_moments_from_histogram(const Histogram& hist, int max_order) {
  if (max_order < 0) throw std::invalid_argument("order must be nonnegative");
  std::vector<Rational> out(static_cast<std::size_t>(max_order) + 1);
  for (int i = 0; i < hist.classes(); ++i) {
    std::vector<Rational> powers = power_table(hist.midpoints()[static_cast<std::size_t>(i)],
                                               max_order);
    for (int n = 0; n <= max_order; ++n)
      out[static_cast<std::size_t>(n)] +=
          hist.weights()[static_cast<std::size_t>(i)] * powers[static_cast<std::size_t>(n)];
  }
  return MomentSeq(std::move(out));
}

std::pair<MomentSeq, MomentSeq> discrete_oracle(const LatticeDist& dist, int max_order) {
  if (max_order < 0) throw std::invalid_argument("order must be nonnegative");
  LatticeDist d = dist;
  d.validate_and_normalize();

  Rational step = d.h / d.m;
  std::vector<Rational> raw(static_cast<std::size_t>(max_order) + 1);
  std::vector<Rational> grouped(static_cast<std::size_t>(max_order) + 1);
  Rational inv_m(1, d.m);
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    Rational value = step * d.support[i];
    std::vector<Rational> powers = power_table(value, max_order);
    for (int n = 0; n <= max_order; ++n)
      raw[static_cast<std::size_t>(n)] += d.probs[i] * powers[static_cast<std::size_t>(n)];
    // The class of width h holding this point has its midpoint at one of m
    // lattice positions; average the moment over all of them.
    for (int j = 0; j < d.m; ++j) {
      Rational offset = Rational(-(d.m - 1 - 2 * j)) * d.h / (2 * d.m);
      std::vector<Rational> shifted = power_table(value + offset, max_order);
      for (int n = 0; n <= max_order; ++n)
        grouped[static_cast<std::size_t>(n)] +=
            inv_m * d.probs[i] * shifted[static_cast<std::size_t>(n)];
    }
  }
  return {MomentSeq(std::move(raw)), MomentSeq(std::move(grouped))};
}

namespace {

struct TruncatedSupport {
  double lower, upper;
};

/// Push a finite end outwards until the weighted shell mass is negligible.
double extend_end(const DensityOracle& d, double start, int sign, int max_order) {
  auto weighted = [&](double t) {
    return d.density(t) * (1.0 + std::pow(std::abs(t), max_order));
  };
  double b = std::max(std::abs(start), 1.0);
  for (int iter = 0; iter < 64; ++iter) {
    double next = 2.0 * b + 1.0;
    double shell = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [&](double t) { return weighted(sign * t); }, b, next, 15, 1e-10);
    if (std::abs(shell) < d.tail_mass) return sign * next;
    b = next;
  }
  throw std::runtime_error("density tail does not decay fast enough to truncate");
}

TruncatedSupport truncate_support(const DensityOracle& d, int max_order) {
  TruncatedSupport s{d.lower, d.upper};
  if (d.lower_infinite) s.lower = extend_end(d, d.upper_infinite ? 0.0 : s.upper, -1, max_order);
  if (d.upper_infinite) s.upper = extend_end(d, d.lower_infinite ? 0.0 : s.lower, +1, max_order);
  if (!(s.lower < s.upper)) throw std::invalid_argument("density support is empty");
  return s;
}

/// Piecewise quadrature between breakpoints, with the absolute error
/// estimates summed into err_acc.
double integrate_piecewise(const std::function<double(double)>& f, const DensityOracle& d,
                           const TruncatedSupport& s, double& err_acc) {
  std::vector<double> cuts{s.lower, s.upper};
  for (double b : d.breakpoints)
    if (b > s.lower && b < s.upper) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, cuts[i], cuts[i + 1], 15, d.quad_tol, &err);
    err_acc += err;
  }
  return total;
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> continuous_oracle(const DensityOracle& d,
                                                                      double h, int max_order) {
  if (!d.density) throw std::invalid_argument("density oracle has no density");
  if (!(h > 0)) throw std::invalid_argument("grouping width h must be positive");
  if (max_order < 0) throw std::invalid_argument("order must be nonnegative");

  TruncatedSupport s = truncate_support(d, max_order);
  std::vector<double> raw(static_cast<std::size_t>(max_order) + 1);
  std::vector<double> grouped(static_cast<std::size_t>(max_order) + 1);
  double err_acc = 0.0;
  for (int n = 0; n <= max_order; ++n) {
    raw[static_cast<std::size_t>(n)] = integrate_piecewise(
        [&](double t) { return std::pow(t, n) * d.density(t); }, d, s, err_acc);
    // Inner average over one class done in closed form:
    // (1/h) int_{-h/2}^{h/2} (t+u)^n du.
    grouped[static_cast<std::size_t>(n)] = integrate_piecewise(
        [&](double t) {
          return d.density(t) *
                 (std::pow(t + h / 2, n + 1) - std::pow(t - h / 2, n + 1)) / ((n + 1) * h);
        },
        d, s, err_acc);
  }
  if (err_acc > d.quad_tol * 100) {
    std::ostringstream msg;
    msg << "quadrature error estimate " << err_acc << " exceeds the oracle budget";
    throw std::runtime_error(msg.str());
  }
  if (std::abs(raw[0] - 1.0) > 1e-6)
    throw std::invalid_argument("density is not normalized to total mass one");
  return {std::move(raw), std::move(grouped)};
}

std::vector<double> lattice_grouped_moments(std::span<const double> samples, double h,
                                            double offset, int max_order) {
  if (samples.empty()) throw std::invalid_argument("sample set must not be empty");
  if (!(h > 0)) throw std::invalid_argument("grouping width h must be positive");
  std::vector<double> snapped;
  snapped.reserve(samples.size());
  for (double x : samples) snapped.push_back(offset + h * std::round((x - offset) / h));
  return raw_moments_from_samples(snapped, max_order);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d4a49fbf64eafbULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::vector<double> randomized_lattice_mean(std::span<const double> samples, double h,
                                            int max_order, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("at least one trial is required");
  std::uint64_t state = seed;
  std::vector<std::uint64_t> trial_seeds(static_cast<std::size_t>(trials));
  for (auto& s : trial_seeds) s = splitmix64(state);

  std::vector<double> acc(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seeds[static_cast<std::size_t>(t)]);
    double offset = h * (uniform01(rng) - 0.5);
    std::vector<double> trial = lattice_grouped_moments(samples, h, offset, max_order);
    for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += trial[n];
  }
  for (double& v : acc) v /= static_cast<double>(trials);
  return acc;
}

std::pair<MomentTensor, MomentTensor> bivariate_discrete_oracle(const BivariateLatticeDist& dist,
                                                                const MultiIndex& maxidx) {
  if (maxidx.dims() != 2) throw std::invalid_argument("bivariate oracle needs a 2-axis index");
  BivariateLatticeDist d = dist;
  d.validate_and_normalize();

  int n1 = maxidx[0], n2 = maxidx[1];
  std::map<MultiIndex, Rational> raw, grouped;
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j <= n2; ++j) {
      raw[MultiIndex({i, j})] = 0;
      grouped[MultiIndex({i, j})] = 0;
    }

  Rational step1 = d.h1 / d.m1, step2 = d.h2 / d.m2;
  for (std::size_t p = 0; p < d.support.size(); ++p) {
    Rational v1 = step1 * d.support[p][0];
    Rational v2 = step2 * d.support[p][1];
    std::vector<Rational> pow1 = power_table(v1, n1);
    std::vector<Rational> pow2 = power_table(v2, n2);

    // The class-offset average factorizes per axis.
    std::vector<Rational> avg1(static_cast<std::size_t>(n1) + 1);
    for (int j = 0; j < d.m1; ++j) {
      Rational offset = Rational(-(d.m1 - 1 - 2 * j)) * d.h1 / (2 * d.m1);
      std::vector<Rational> shifted = power_table(v1 + offset, n1);
      for (int n = 0; n <= n1; ++n)
        avg1[static_cast<std::size_t>(n)] += shifted[static_cast<std::size_t>(n)] / d.m1;
    }
    std::vector<Rational> avg2(static_cast<std::size_t>(n2) + 1);
    for (int j = 0; j < d.m2; ++j) {
      Rational offset = Rational(-(d.m2 - 1 - 2 * j)) * d.h2 / (2 * d.m2);
      std::vector<Rational> shifted = power_table(v2 + offset, n2);
      for (int n = 0; n <= n2; ++n)
        avg2[static_cast<std::size_t>(n)] += shifted[static_cast<std::size_t>(n)] / d.m2;
    }

    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        raw[MultiIndex({i, j})] += d.probs[p] * pow1[static_cast<std::size_t>(i)] *
                                   pow2[static_cast<std::size_t>(j)];
        grouped[MultiIndex({i, j})] += d.probs[p] * avg1[static_cast<std::size_t>(i)] *
                                       avg2[static_cast<std::size_t>(j)];
      }
  }
  return {MomentTensor(std::move(raw)), MomentTensor(std::move(grouped))};
}

} // namespace shepcor
