#include "shepcor/verify.hpp"

#include "shepcor/io.hpp"
#include "shepcor/umbral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shepcor {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.passed; });
}

namespace {

/// Counts failing instances of an exact identity.
struct ExactCheck {
  std::string name;
  long failures = 0;

  void require(bool ok) { failures += ok ? 0 : 1; }
  VerifyCheck finish() const {
    return {name, failures == 0, static_cast<double>(failures)};
  }
};

/// Tracks the worst deviation of a numeric identity.
struct NumericCheck {
  std::string name;
  double tol;
  double worst = 0.0;

  void observe(double deviation) { worst = std::max(worst, std::abs(deviation)); }
  VerifyCheck finish() const { return {name, worst <= tol, worst}; }
};

Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

/// Independent Bernoulli evaluation (Akiyama-Tanigawa scheme) used to
/// cross-check the recurrence-based implementation at run time.
Rational bernoulli_alternative(int n) {
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) a[j] = Rational(1, j + 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) a[j] = Rational(j + 1) * (a[j] - a[j + 1]);
  if (n == 1) return -a[0];
  return a[0];
}

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

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

MomentSeq random_unit_sequence(std::mt19937_64& rng, int max_order) {
  std::vector<Rational> v(static_cast<std::size_t>(max_order) + 1);
  v[0] = 1;
  for (int i = 1; i <= max_order; ++i)
    v[i] = Rational(uniform_int(rng, -30, 30), uniform_int(rng, 1, 12));
  return MomentSeq(std::move(v));
}

// ---------------------------------------------------------------- bernoulli

void suite_bernoulli(VerifyReport& report) {
  MomentSeq b = bernoulli_numbers(24);

  ExactCheck alt{"independent evaluation agrees, n <= 24"};
  for (int n = 0; n <= 24; ++n) alt.require(b[n] == bernoulli_alternative(n));
  report.checks.push_back(alt.finish());

  ExactCheck rec{"defining recurrence holds, k = 1..24"};
  for (int k = 1; k <= 24; ++k) {
    auto row = binomial_row(k + 1);
    Rational acc = 0;
    for (int i = 0; i <= k; ++i) acc += Rational(row[i]) * b[i];
    rec.require(acc == 0);
  }
  report.checks.push_back(rec.finish());

  ExactCheck odd{"odd entries beyond the first vanish"};
  for (int n = 3; n <= 23; n += 2) odd.require(b[n] == 0);
  report.checks.push_back(odd.finish());

  ExactCheck frozen{"B_12 = -691/2730"};
  frozen.require(b[12] == Rational(-691, 2730));
  report.checks.push_back(frozen.finish());

  ExactCheck avg{"polynomials average to zero on the unit interval, n = 1..20"};
  for (int n = 1; n <= 20; ++n) avg.require(integrate_01(bernoulli_polynomial(n)) == 0);
  report.checks.push_back(avg.finish());

  ExactCheck half{"half shift yields the correction coefficients, j <= 20"};
  MomentSeq shifted = shift(bernoulli_numbers(20), Rational(1, 2));
  for (int j = 0; j <= 20; ++j)
    half.require(shifted[j] == (rational_pow(Rational(2), 1 - j) - 1) * b[j]);
  report.checks.push_back(half.finish());

  ExactCheck neg{"negative half shift yields the class-average moments, j <= 20"};
  MomentSeq centered = shift(inverse_bernoulli_moments(20), Rational(-1, 2));
  for (int j = 0; j <= 20; ++j) {
    Rational expected =
        j % 2 == 1 ? Rational(0) : Rational(1, j + 1) * rational_pow(Rational(1, 2), j);
    neg.require(centered[j] == expected);
  }
  report.checks.push_back(neg.finish());

  ExactCheck mul{"multiplication theorem residual vanishes, n <= 8, m <= 4"};
  for (int n = 0; n <= 8; ++n)
    for (int m = 1; m <= 4; ++m) mul.require(multiplication_theorem_residual(n, m).is_zero());
  report.checks.push_back(mul.finish());

  ExactCheck inv{"the two correction sequences are convolution inverses"};
  inv.require(convolve(sheppard_coeffs(16), centered_uniform_moments(16)) ==
              MomentSeq::augmentation(16));
  report.checks.push_back(inv.finish());
}

// ---------------------------------------------------------------- roundtrip

void suite_roundtrip(VerifyReport& report, const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const std::vector<Rational> widths = {Rational(1), Rational(1, 2), Rational(3, 7),
                                        Rational(7, 5), Rational(5)};

  ExactCheck trips{"200 random sequences, N = 12, continuous and m in {1,2,3,5,8}"};
  for (int rep = 0; rep < 200; ++rep) {
    MomentSeq x = random_unit_sequence(rng, 12);
    const Rational& h = widths[rng() % widths.size()];
    trips.require(correct_continuous(uncorrect_continuous(x, h), h) == x);
    trips.require(uncorrect_continuous(correct_continuous(x, h), h) == x);
    for (int m : {1, 2, 3, 5, 8}) {
      trips.require(correct_discrete(uncorrect_discrete(x, h, m), h, m) == x);
      trips.require(uncorrect_discrete(correct_discrete(x, h, m), h, m) == x);
    }
  }
  report.checks.push_back(trips.finish());

  ExactCheck prod{"matrix product in both orders is the identity, N = 12"};
  std::vector<GroupingSpec> specs = {GroupingSpec::continuous(Rational(1)),
                                     GroupingSpec::discrete(Rational(1, 2), 3),
                                     GroupingSpec::discrete(Rational(7, 5), 5)};
  for (const GroupingSpec& spec : specs) {
    CorrectionMatrix to_raw(spec, 12, Direction::ToRaw);
    CorrectionMatrix to_grouped(spec, 12, Direction::ToGrouped);
    for (int n = 0; n <= 12; ++n)
      for (int k = 0; k <= 12; ++k) {
        Rational forward = 0, backward = 0;
        for (int j = 0; j <= 12; ++j) {
          forward += to_raw.entry(n, j) * to_grouped.entry(j, k);
          backward += to_grouped.entry(n, j) * to_raw.entry(j, k);
        }
        Rational expected = n == k ? 1 : 0;
        prod.require(forward == expected);
        prod.require(backward == expected);
      }
  }
  report.checks.push_back(prod.finish());

  ExactCheck limits{"lattice kernel deviation shrinks ~100x per decade of m"};
  MomentSeq cont = correction_kernel(GroupingSpec::continuous(Rational(1)), 8, Direction::ToRaw);
  for (int m : {10, 100}) {
    MomentSeq coarse =
        correction_kernel(GroupingSpec::discrete(Rational(1), m), 8, Direction::ToRaw);
    MomentSeq fine =
        correction_kernel(GroupingSpec::discrete(Rational(1), 10 * m), 8, Direction::ToRaw);
    for (int j = 0; j <= 8; ++j) {
      Rational d_coarse = rational_abs(coarse[j] - cont[j]);
      Rational d_fine = rational_abs(fine[j] - cont[j]);
      if (d_coarse == 0) {
        limits.require(d_fine == 0);
        continue;
      }
      limits.require(d_fine * 90 <= d_coarse);
      limits.require(d_fine * 110 >= d_coarse);
    }
  }
  report.checks.push_back(limits.finish());
}

// ----------------------------------------------------------- oracle-discrete

std::vector<std::pair<std::string, LatticeDist>> lattice_corpus() {
  auto dist = [](Rational h, std::vector<long long> support, std::vector<Rational> probs) {
    LatticeDist d;
    d.h = std::move(h);
    d.m = 1; // per-check code overrides m
    d.support = std::move(support);
    d.probs = std::move(probs);
    return d;
  };
  std::vector<std::pair<std::string, LatticeDist>> corpus;
  corpus.emplace_back("point mass", dist(Rational(1), {0}, {Rational(1)}));
  corpus.emplace_back("symmetric three-point",
                      dist(Rational(1, 2), {-1, 0, 1},
                           {Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
  corpus.emplace_back("asymmetric three-point",
                      dist(Rational(3), {-2, 0, 3},
                           {Rational(1, 6), Rational(1, 2), Rational(1, 3)}));
  corpus.emplace_back("two-point",
                      dist(Rational(7, 5), {0, 1}, {Rational(1, 3), Rational(2, 3)}));
  corpus.emplace_back("binomial counts",
                      dist(Rational(1, 10), {0, 1, 2, 3, 4},
                           {Rational(1, 16), Rational(4, 16), Rational(6, 16), Rational(4, 16),
                            Rational(1, 16)}));
  corpus.emplace_back("halving tail",
                      dist(Rational(2), {0, 1, 2, 3},
                           {Rational(8, 15), Rational(4, 15), Rational(2, 15), Rational(1, 15)}));
  corpus.emplace_back("gapped support",
                      dist(Rational(1, 3), {-5, -1, 2, 7},
                           {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
  corpus.emplace_back("six-point uniform",
                      dist(Rational(5), {1, 2, 3, 4, 5, 6},
                           std::vector<Rational>(6, Rational(1, 6))));
  corpus.emplace_back("skewed three-point",
                      dist(Rational(1), {0, 1, 2},
                           {Rational(2, 3), Rational(1, 4), Rational(1, 12)}));
  corpus.emplace_back("wide two-point",
                      dist(Rational(1, 2), {-10, 10}, {Rational(3, 7), Rational(4, 7)}));
  corpus.emplace_back("distant point mass", dist(Rational(9, 4), {42}, {Rational(1)}));
  corpus.emplace_back("seven-point triangular",
                      dist(Rational(6, 5), {-3, -2, -1, 0, 1, 2, 3},
                           {Rational(1, 16), Rational(2, 16), Rational(3, 16), Rational(4, 16),
                            Rational(3, 16), Rational(2, 16), Rational(1, 16)}));
  return corpus;
}

void check_discrete_dist(VerifyReport& report, const std::string& name, const LatticeDist& base,
                         const std::vector<int>& divisors) {
  ExactCheck check{name};
  for (int m : divisors) {
    LatticeDist d = base;
    d.m = m;
    auto [raw, grouped] = discrete_oracle(d, 8);
    check.require(correct_discrete(grouped, d.h, m) == raw);
    check.require(uncorrect_discrete(raw, d.h, m) == grouped);
    if (m == 1) check.require(grouped == raw);
  }
  report.checks.push_back(check.finish());
}

void suite_oracle_discrete(VerifyReport& report, const VerifyOptions& opts) {
  for (const auto& [name, base] : lattice_corpus())
    check_discrete_dist(report, name + " (h = " + format_rational(base.h) + ")", base,
                        {1, 2, 3, 5});
  if (opts.dist)
    check_discrete_dist(report, "user distribution (m = " + std::to_string(opts.dist->m) + ")",
                        *opts.dist, {opts.dist->m});
}

// --------------------------------------------------------- oracle-continuous

void suite_oracle_continuous(VerifyReport& report, const VerifyOptions& opts) {
  std::vector<std::pair<std::string, DensityOracle>> densities;
  densities.emplace_back("uniform(0,1)", uniform_density(0.0, 1.0));
  densities.emplace_back("triangular(-1, 0.5, 2)", triangular_density(-1.0, 0.5, 2.0));
  densities.emplace_back("truncated normal(0.3, 1.2) on [-2, 3]",
                         truncated_normal_density(0.3, 1.2, -2.0, 3.0));

  const std::vector<Rational> widths = {Rational(1, 10), Rational(1, 2), Rational(1)};
  for (const auto& [name, density] : densities) {
    for (const Rational& h : widths) {
      NumericCheck check{name + ", h = " + format_rational(h), opts.tol};
      auto [raw, grouped] = continuous_oracle(density, to_double(h), 6);
      std::vector<double> predicted_grouped = uncorrect_continuous(raw, h);
      std::vector<double> recovered_raw = correct_continuous(grouped, h);
      for (int n = 0; n <= 6; ++n) {
        check.observe(predicted_grouped[static_cast<std::size_t>(n)] -
                      grouped[static_cast<std::size_t>(n)]);
        check.observe(recovered_raw[static_cast<std::size_t>(n)] -
                      raw[static_cast<std::size_t>(n)]);
      }
      report.checks.push_back(check.finish());
    }
  }
}

// ------------------------------------------------------------- multivariate

BivariateLatticeDist joint_table(Rational h1, int m1, Rational h2, int m2,
                                 const std::vector<long long>& s1,
                                 const std::vector<long long>& s2,
                                 const std::function<Rational(long long, long long)>& weight) {
  BivariateLatticeDist d;
  d.h1 = std::move(h1);
  d.h2 = std::move(h2);
  d.m1 = m1;
  d.m2 = m2;
  Rational total = 0;
  for (long long a : s1)
    for (long long b : s2) {
      d.support.push_back({a, b});
      d.probs.push_back(weight(a, b));
      total += d.probs.back();
    }
  for (Rational& p : d.probs) p /= total;
  return d;
}

void check_joint_dist(VerifyReport& report, const std::string& name,
                      const BivariateLatticeDist& dist, const MultiIndex& maxidx) {
  ExactCheck check{name};
  auto [raw, grouped] = bivariate_discrete_oracle(dist, maxidx);
  AxisSpecs specs = {GroupingSpec::discrete(dist.h1, dist.m1),
                     GroupingSpec::discrete(dist.h2, dist.m2)};
  check.require(correct_mv(grouped, specs) == raw);
  check.require(uncorrect_mv(raw, specs) == grouped);
  report.checks.push_back(check.finish());
}

void suite_multivariate(VerifyReport& report, const VerifyOptions& opts) {
  const MultiIndex orders44({4, 4});

  check_joint_dist(report, "3x3 correlated table, m = (2,3)",
                   joint_table(Rational(1), 2, Rational(1, 2), 3, {0, 1, 2}, {0, 1, 2},
                               [](long long a, long long b) { return Rational(a + b + 1); }),
                   orders44);

  {
    ExactCheck check{"7x7 correlated table, all m pairs in {1,2,3}^2"};
    for (int m1 : {1, 2, 3})
      for (int m2 : {1, 2, 3}) {
        BivariateLatticeDist d =
            joint_table(Rational(3, 2), m1, Rational(2), m2, {-3, -2, -1, 0, 1, 2, 3},
                        {0, 1, 2, 3, 4, 5, 6},
                        [](long long a, long long b) { return Rational(a * b + 22); });
        auto [raw, grouped] = bivariate_discrete_oracle(d, orders44);
        AxisSpecs specs = {GroupingSpec::discrete(d.h1, m1), GroupingSpec::discrete(d.h2, m2)};
        check.require(correct_mv(grouped, specs) == raw);
        check.require(uncorrect_mv(raw, specs) == grouped);
        if (m1 == 1 && m2 == 1) check.require(grouped == raw);
      }
    report.checks.push_back(check.finish());
  }

  {
    ExactCheck check{"independent axes factorize into univariate oracles"};
    LatticeDist a;
    a.h = Rational(1);
    a.m = 2;
    a.support = {0, 1, 2};
    a.probs = {Rational(1, 2), Rational(1, 3), Rational(1, 6)};
    LatticeDist b;
    b.h = Rational(1, 2);
    b.m = 3;
    b.support = {-1, 1};
    b.probs = {Rational(1, 3), Rational(2, 3)};
    BivariateLatticeDist prod;
    prod.h1 = a.h;
    prod.h2 = b.h;
    prod.m1 = a.m;
    prod.m2 = b.m;
    for (std::size_t i = 0; i < a.support.size(); ++i)
      for (std::size_t j = 0; j < b.support.size(); ++j) {
        prod.support.push_back({a.support[i], b.support[j]});
        prod.probs.push_back(a.probs[i] * b.probs[j]);
      }
    auto [raw2, grouped2] = bivariate_discrete_oracle(prod, orders44);
    auto [raw_a, grouped_a] = discrete_oracle(a, 4);
    auto [raw_b, grouped_b] = discrete_oracle(b, 4);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) {
        check.require(raw2.at(MultiIndex({i, j})) == raw_a[i] * raw_b[j]);
        check.require(grouped2.at(MultiIndex({i, j})) == grouped_a[i] * grouped_b[j]);
      }
    report.checks.push_back(check.finish());
  }

  std::mt19937_64 rng(opts.seed ^ 0x6d766172ULL);
  auto random_box_tensor = [&rng](const std::vector<int>& maxo) {
    std::map<MultiIndex, Rational> values;
    std::vector<int> idx(maxo.size(), 0);
    while (true) {
      Rational v = idx == std::vector<int>(maxo.size(), 0)
                       ? Rational(1)
                       : Rational(uniform_int(rng, -30, 30), uniform_int(rng, 1, 12));
      values.emplace(MultiIndex(idx), v);
      std::size_t k = maxo.size();
      while (k > 0 && idx[k - 1] == maxo[k - 1]) idx[--k] = 0;
      if (k == 0) break;
      ++idx[k - 1];
    }
    return MomentTensor(std::move(values));
  };

  {
    ExactCheck check{"random tensor round trips, two and three axes, mixed modes"};
    AxisSpecs specs2 = {GroupingSpec::continuous(Rational(1, 2)),
                        GroupingSpec::discrete(Rational(3), 2)};
    AxisSpecs specs3 = {GroupingSpec::continuous(Rational(1, 2)),
                        GroupingSpec::discrete(Rational(3), 2),
                        GroupingSpec::discrete(Rational(1), 5)};
    for (int rep = 0; rep < 10; ++rep) {
      MomentTensor t2 = random_box_tensor({4, 4});
      check.require(uncorrect_mv(correct_mv(t2, specs2), specs2) == t2);
      check.require(correct_mv(uncorrect_mv(t2, specs2), specs2) == t2);
      MomentTensor t3 = random_box_tensor({4, 4, 4});
      check.require(uncorrect_mv(correct_mv(t3, specs3), specs3) == t3);
      check.require(correct_mv(uncorrect_mv(t3, specs3), specs3) == t3);
    }
    report.checks.push_back(check.finish());
  }

  {
    ExactCheck check{"round trip on a simplex index set"};
    std::map<MultiIndex, Rational> values;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        values.emplace(MultiIndex({i, j}),
                       i == 0 && j == 0 ? Rational(1)
                                        : Rational(uniform_int(rng, -9, 9),
                                                   uniform_int(rng, 1, 9)));
    MomentTensor t(std::move(values));
    AxisSpecs specs = {GroupingSpec::discrete(Rational(1), 3),
                       GroupingSpec::continuous(Rational(2))};
    check.require(uncorrect_mv(correct_mv(t, specs), specs) == t);
    report.checks.push_back(check.finish());
  }

  {
    ExactCheck check{"expanded combination matches the tensor transform"};
    AxisSpecs specs = {GroupingSpec::continuous(Rational(1, 2)),
                       GroupingSpec::discrete(Rational(3, 2), 3)};
    MomentTensor grouped = random_box_tensor({3, 3});
    MomentTensor raw = correct_mv(grouped, specs);
    for (const MultiIndex& index : {MultiIndex({3, 2}), MultiIndex({2, 3}), MultiIndex({3, 3})}) {
      Rational acc = 0;
      for (const auto& [u, c] : expand_correction_polynomial(index, specs))
        acc += c * grouped.at(u);
      check.require(acc == raw.at(index));
    }
    report.checks.push_back(check.finish());
  }

  {
    ExactCheck check{"exchangeable parent keeps a symmetric tensor"};
    BivariateLatticeDist d =
        joint_table(Rational(1), 2, Rational(1), 2, {0, 1, 2}, {0, 1, 2},
                    [](long long a, long long b) { return Rational(1 + a * b); });
    auto [raw, grouped] = bivariate_discrete_oracle(d, orders44);
    AxisSpecs specs = {GroupingSpec::discrete(d.h1, d.m1), GroupingSpec::discrete(d.h2, d.m2)};
    MomentTensor corrected = correct_mv(grouped, specs);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j)
        check.require(corrected.at(MultiIndex({i, j})) == corrected.at(MultiIndex({j, i})));
    (void)raw;
    report.checks.push_back(check.finish());
  }

  {
    ExactCheck check{"marginal axis agrees with the univariate correction"};
    BivariateLatticeDist d =
        joint_table(Rational(1), 2, Rational(1, 2), 3, {0, 1, 2}, {0, 1, 2},
                    [](long long a, long long b) { return Rational(a + b + 1); });
    auto [raw, grouped] = bivariate_discrete_oracle(d, orders44);
    AxisSpecs specs = {GroupingSpec::discrete(d.h1, d.m1), GroupingSpec::discrete(d.h2, d.m2)};
    MomentTensor corrected = correct_mv(grouped, specs);

    std::map<long long, Rational> marginal;
    for (std::size_t i = 0; i < d.support.size(); ++i) marginal[d.support[i][0]] += d.probs[i];
    LatticeDist axis1;
    axis1.h = d.h1;
    axis1.m = d.m1;
    for (const auto& [s, p] : marginal) {
      axis1.support.push_back(s);
      axis1.probs.push_back(p);
    }
    auto [raw1, grouped1] = discrete_oracle(axis1, 4);
    for (int n = 0; n <= 4; ++n) {
      check.require(raw.at(MultiIndex({n, 0})) == raw1[n]);
      check.require(grouped.at(MultiIndex({n, 0})) == grouped1[n]);
      check.require(corrected.at(MultiIndex({n, 0})) == raw1[n]);
    }
    report.checks.push_back(check.finish());
  }

  if (opts.joint) check_joint_dist(report, "user joint table", *opts.joint, orders44);
}

// ----------------------------------------------------------------------- mc

std::vector<double> synthetic_uniform_samples(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<double> samples(count);
  for (double& x : samples) x = uniform01(rng);
  return samples;
}

void mc_band_check(VerifyReport& report, const std::string& name,
                   const std::vector<double>& samples, double h, std::uint64_t seed) {
  // K independent estimates; the band is 3 standard errors of their mean,
  // so the check normalizes itself against the observed Monte Carlo noise.
  const int replicates = 30;
  const int trials = 20;
  const int max_order = 2;
  std::uint64_t state = seed ^ 0x626e64ULL;

  std::vector<std::vector<double>> estimates;
  for (int r = 0; r < replicates; ++r)
    estimates.push_back(
        randomized_lattice_mean(samples, h, max_order, trials, splitmix64(state)));

  std::vector<double> raw = raw_moments_from_samples(samples, max_order);
  std::vector<double> target = uncorrect_continuous(raw, Rational(h));

  NumericCheck check{name, 1.0};
  double worst_norm = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    double mean = 0.0;
    for (const auto& e : estimates) mean += e[static_cast<std::size_t>(n)];
    mean /= replicates;
    double var = 0.0;
    for (const auto& e : estimates) {
      double d = e[static_cast<std::size_t>(n)] - mean;
      var += d * d;
    }
    var /= (replicates - 1);
    double se = std::sqrt(var / replicates) + 1e-15;
    worst_norm = std::max(worst_norm, std::abs(mean - target[static_cast<std::size_t>(n)]) /
                                          (3.0 * se));
  }
  check.observe(worst_norm); // pass iff every moment sits inside its 3-sigma band
  report.checks.push_back(check.finish());
}

void suite_mc(VerifyReport& report, const VerifyOptions& opts) {
  const double h = 0.1;
  std::vector<double> samples = synthetic_uniform_samples(opts.seed ^ 0x73616dULL, 2000);

  {
    ExactCheck check{"grouping on the midpoint lattice is a fixed point"};
    std::vector<double> lattice;
    for (int k = -5; k <= 14; ++k) lattice.push_back(0.5 * k);
    std::vector<double> direct = raw_moments_from_samples(lattice, 4);
    std::vector<double> snapped = lattice_grouped_moments(lattice, 0.5, 0.0, 4);
    bool equal = true;
    for (std::size_t n = 0; n < direct.size(); ++n)
      if (direct[n] != snapped[n]) equal = false;
    check.require(equal);
    report.checks.push_back(check.finish());
  }

  {
    ExactCheck check{"fixed seed reproduces, changed seed moves"};
    std::vector<double> a = randomized_lattice_mean(samples, h, 2, 50, opts.seed);
    std::vector<double> b = randomized_lattice_mean(samples, h, 2, 50, opts.seed);
    std::vector<double> c = randomized_lattice_mean(samples, h, 2, 50, opts.seed + 1);
    check.require(a == b);
    check.require(a != c);
    report.checks.push_back(check.finish());
  }

  {
    // Constant data: every trial mean is the constant plus one uniform
    // rounding offset, so the average of `trials` offsets has standard
    // deviation h/sqrt(12 * trials).
    NumericCheck check{"constant sample estimate unbiased within 3 sigma", 1.0};
    const double c = 2.3;
    const int trials = 400;
    std::vector<double> constant(64, c);
    std::vector<double> est = randomized_lattice_mean(constant, h, 1, trials, opts.seed);
    double sigma = h / std::sqrt(12.0 * trials);
    check.observe(std::abs(est[1] - c) / (3.0 * sigma));
    report.checks.push_back(check.finish());
  }

  mc_band_check(report, "uniform samples: estimates match the exact transform", samples, h,
                opts.seed);

  {
    // Quadrupling the trial count should halve the spread of independent
    // estimates; the bracket allows the sampling noise of a 40-replicate
    // standard deviation estimate.
    const int replicates = 40;
    std::uint64_t state = opts.seed ^ 0x726174ULL;
    auto spread = [&](int trials) {
      std::vector<double> firsts;
      for (int r = 0; r < replicates; ++r)
        firsts.push_back(randomized_lattice_mean(samples, h, 1, trials, splitmix64(state))[1]);
      double mean = 0.0;
      for (double v : firsts) mean += v;
      mean /= replicates;
      double var = 0.0;
      for (double v : firsts) var += (v - mean) * (v - mean);
      return std::sqrt(var / (replicates - 1));
    };
    double s_coarse = spread(16);
    double s_fine = spread(64);
    double ratio = s_coarse / (s_fine + 1e-300);
    report.checks.push_back({"standard error halves when trials quadruple",
                             ratio >= 1.25 && ratio <= 3.2, ratio});
  }

  if (opts.samples) {
    double lo = *std::min_element(opts.samples->begin(), opts.samples->end());
    double hi = *std::max_element(opts.samples->begin(), opts.samples->end());
    double user_h = hi > lo ? (hi - lo) / 16.0 : 1.0;
    mc_band_check(report, "user samples: estimates match the exact transform", *opts.samples,
                  user_h, opts.seed);
  }
}

} // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites = {"bernoulli",         "roundtrip",
                                                  "oracle-discrete",   "oracle-continuous",
                                                  "multivariate",      "mc"};
  return suites;
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& options) {
  VerifyReport report;
  report.suite = suite;
  report.seed = options.seed;
  report.tol = options.tol;
  if (suite == "bernoulli")
    suite_bernoulli(report);
  else if (suite == "roundtrip")
    suite_roundtrip(report, options);
  else if (suite == "oracle-discrete")
    suite_oracle_discrete(report, options);
  else if (suite == "oracle-continuous")
    suite_oracle_continuous(report, options);
  else if (suite == "multivariate")
    suite_multivariate(report, options);
  else if (suite == "mc")
    suite_mc(report, options);
  else if (suite == "all") {
    for (const std::string& name : verify_suites()) {
      VerifyReport part = run_suite(name, options);
      for (VerifyCheck& check : part.checks) {
        check.name = name + ": " + check.name;
        report.checks.push_back(std::move(check));
      }
    }
  } else {
    throw std::invalid_argument("unknown verification suite '" + suite + "'");
  }
  return report;
}

nlohmann::json report_to_json(const VerifyReport& report) {
  nlohmann::json out;
  out["suite"] = report.suite;
  out["seed"] = report.seed;
  out["tol"] = report.tol;
  out["passed"] = report.passed();
  nlohmann::json checks = nlohmann::json::array();
  for (const VerifyCheck& check : report.checks) {
    nlohmann::json c;
    c["name"] = check.name;
    c["passed"] = check.passed;
    c["residual"] = check.residual;
    checks.push_back(std::move(c));
  }
  out["checks"] = std::move(checks);
  return out;
}

} // namespace shepcor
