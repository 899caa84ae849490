#include "doctest.h"

#include "shepcor/corrections.hpp"
#include "shepcor/umbral.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using namespace shepcor;

namespace {

MomentSeq random_unit_sequence(std::mt19937_64& rng, int max_order) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 12);
  std::vector<Rational> v(static_cast<std::size_t>(max_order) + 1);
  v[0] = 1;
  for (int i = 1; i <= max_order; ++i) v[i] = Rational(num(rng), den(rng));
  return MomentSeq(std::move(v));
}

const std::vector<Rational> kWidths = {Rational(1), Rational(1, 2), Rational(3, 7),
                                       Rational(5)};

} // namespace

TEST_CASE("grouping spec validation") {
  CHECK_THROWS_AS(GroupingSpec::continuous(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(GroupingSpec::continuous(Rational(-1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(GroupingSpec::discrete(Rational(1), 0), std::invalid_argument);
  CHECK_THROWS_AS(GroupingSpec::discrete(Rational(1), -3), std::invalid_argument);
  CHECK_FALSE(GroupingSpec::continuous(Rational(2)).is_discrete());
  CHECK(GroupingSpec::discrete(Rational(2), 1).is_discrete());
}

TEST_CASE("continuous kernels at unit width") {
  GroupingSpec spec = GroupingSpec::continuous(Rational(1));
  MomentSeq to_raw = correction_kernel(spec, 4, Direction::ToRaw);
  CHECK(to_raw.values() == std::vector<Rational>{Rational(1), Rational(0), Rational(-1, 12),
                                                 Rational(0), Rational(7, 240)});
  MomentSeq to_grouped = correction_kernel(spec, 4, Direction::ToGrouped);
  CHECK(to_grouped.values() == std::vector<Rational>{Rational(1), Rational(0), Rational(1, 12),
                                                     Rational(0), Rational(1, 80)});
}

TEST_CASE("discrete kernel values for h = 1, m = 2") {
  // Grouped moments of a point mass at the origin: each class of width 1
  // holds the two lattice points at offsets -1/4 and +1/4 from its midpoint,
  // so the grouped second moment is 1/16 and the fourth is 1/256.
  GroupingSpec spec = GroupingSpec::discrete(Rational(1), 2);
  MomentSeq to_grouped = correction_kernel(spec, 4, Direction::ToGrouped);
  CHECK(to_grouped[1] == 0);
  CHECK(to_grouped[2] == Rational(1, 16));
  CHECK(to_grouped[3] == 0);
  CHECK(to_grouped[4] == Rational(1, 256));
  MomentSeq to_raw = correction_kernel(spec, 4, Direction::ToRaw);
  CHECK(to_raw[2] == Rational(-1, 16));
}

TEST_CASE("kernels in opposite directions are convolution inverses") {
  for (const Rational& h : kWidths) {
    for (int m : {0, 1, 2, 3, 5, 8}) {
      GroupingSpec spec = m == 0 ? GroupingSpec::continuous(h) : GroupingSpec::discrete(h, m);
      MomentSeq a = correction_kernel(spec, 12, Direction::ToRaw);
      MomentSeq b = correction_kernel(spec, 12, Direction::ToGrouped);
      CHECK(convolve(a, b) == MomentSeq::augmentation(12));
    }
  }
}

TEST_CASE("classic corrected variance") {
  // Grouped moments [1, 0, 1/4] at width 1 correct to a parent variance of
  // 1/4 - 1/12 = 1/6.
  MomentSeq grouped({Rational(1), Rational(0), Rational(1, 4)});
  MomentSeq raw = correct_continuous(grouped, Rational(1));
  CHECK(raw[1] == 0);
  CHECK(raw[2] == Rational(1, 6));
  CHECK(uncorrect_continuous(raw, Rational(1)) == grouped);
}

TEST_CASE("correction matrix structure") {
  CorrectionMatrix matrix(GroupingSpec::continuous(Rational(1)), 6, Direction::ToRaw);
  CHECK(matrix.max_order() == 6);
  for (int n = 0; n <= 6; ++n) {
    CHECK(matrix.entry(n, n) == 1);
    for (int k = n + 1; k <= 6; ++k) CHECK(matrix.entry(n, k) == 0);
    for (int k = 0; k <= n; ++k)
      if ((n - k) % 2 == 1) CHECK(matrix.entry(n, k) == 0);
  }
  CHECK(matrix.entry(2, 0) == Rational(-1, 12));
  CHECK(matrix.entry(4, 2) == Rational(-1, 2));
  CHECK(matrix.entry(4, 0) == Rational(7, 240));
  CHECK_THROWS_AS(matrix.entry(7, 0), std::out_of_range);
  CHECK_THROWS_AS(matrix.entry(-1, 0), std::out_of_range);
}

TEST_CASE("explicit sums, matrix application, and kernel convolution agree") {
  std::mt19937_64 rng(101);
  for (const Rational& h : kWidths) {
    MomentSeq g = random_unit_sequence(rng, 10);
    GroupingSpec cont = GroupingSpec::continuous(h);

    MomentSeq raw = correct_continuous(g, h);
    CHECK(raw == CorrectionMatrix(cont, 10, Direction::ToRaw).apply(g));
    CHECK(raw == convolve(g, correction_kernel(cont, 10, Direction::ToRaw)));

    MomentSeq back = uncorrect_continuous(raw, h);
    CHECK(back == CorrectionMatrix(cont, 10, Direction::ToGrouped).apply(raw));
    CHECK(back == g);

    for (int m : {1, 2, 3, 5, 8}) {
      GroupingSpec disc = GroupingSpec::discrete(h, m);
      MomentSeq draw = correct_discrete(g, h, m);
      CHECK(draw == CorrectionMatrix(disc, 10, Direction::ToRaw).apply(g));
      CHECK(draw == convolve(g, correction_kernel(disc, 10, Direction::ToRaw)));
      CHECK(uncorrect_discrete(draw, h, m) == g);
    }
  }
}

TEST_CASE("round trips are exact in both orders") {
  std::mt19937_64 rng(202);
  for (int rep = 0; rep < 25; ++rep) {
    MomentSeq a = random_unit_sequence(rng, 12);
    Rational h = kWidths[rep % kWidths.size()];
    CHECK(correct_continuous(uncorrect_continuous(a, h), h) == a);
    CHECK(uncorrect_continuous(correct_continuous(a, h), h) == a);
    for (int m : {1, 2, 3, 5, 8}) {
      CHECK(correct_discrete(uncorrect_discrete(a, h, m), h, m) == a);
      CHECK(uncorrect_discrete(correct_discrete(a, h, m), h, m) == a);
    }
  }
}

TEST_CASE("divisor one means grouping changes nothing") {
  std::mt19937_64 rng(303);
  MomentSeq a = random_unit_sequence(rng, 9);
  for (const Rational& h : kWidths) {
    CHECK(correct_discrete(a, h, 1) == a);
    CHECK(uncorrect_discrete(a, h, 1) == a);
  }
}

TEST_CASE("discrete and continuous corrections differ by h^2/(12 m^2) at order two") {
  std::mt19937_64 rng(404);
  MomentSeq g = random_unit_sequence(rng, 4);
  for (const Rational& h : kWidths) {
    MomentSeq cont = correct_continuous(g, h);
    for (int m : {1, 2, 3, 5, 10}) {
      MomentSeq disc = correct_discrete(g, h, m);
      CHECK(disc[2] - cont[2] == h * h / (12 * m * m));
    }
  }
}

TEST_CASE("large divisors approach the continuous correction") {
  std::mt19937_64 rng(505);
  MomentSeq g = random_unit_sequence(rng, 8);
  Rational h(1);
  MomentSeq cont = correct_continuous(g, h);
  Rational prev_gap = 0;
  for (int m : {10, 100, 1000}) {
    MomentSeq disc = correct_discrete(g, h, m);
    Rational gap = 0;
    for (int n = 0; n <= 8; ++n) {
      Rational d = disc[n] - cont[n];
      if (d < 0) d = -d;
      gap += d;
    }
    if (prev_gap != 0) {
      // Each factor of ten in m shrinks the gap by roughly a factor of a
      // hundred; allow a generous exact bracket.
      CHECK(gap * 90 <= prev_gap);
      CHECK(gap * 110 >= prev_gap);
    }
    prev_gap = gap;
  }
}

TEST_CASE("float lane matches the exact lane at double precision") {
  std::mt19937_64 rng(606);
  MomentSeq g = random_unit_sequence(rng, 8);
  std::vector<double> gf;
  for (const Rational& v : g.values()) gf.push_back(to_double(v));

  std::vector<double> raw_f = correct_continuous(gf, Rational(1, 2));
  MomentSeq raw = correct_continuous(g, Rational(1, 2));
  for (int n = 0; n <= 8; ++n)
    CHECK(raw_f[static_cast<std::size_t>(n)] ==
          doctest::Approx(to_double(raw[n])).epsilon(1e-12));

  std::vector<double> disc_f = correct_discrete(gf, Rational(1, 2), 3);
  MomentSeq disc = correct_discrete(g, Rational(1, 2), 3);
  for (int n = 0; n <= 8; ++n)
    CHECK(disc_f[static_cast<std::size_t>(n)] ==
          doctest::Approx(to_double(disc[n])).epsilon(1e-12));

  std::vector<double> back = uncorrect_discrete(disc_f, Rational(1, 2), 3);
  for (int n = 0; n <= 8; ++n)
    CHECK(back[static_cast<std::size_t>(n)] ==
          doctest::Approx(gf[static_cast<std::size_t>(n)]).epsilon(1e-10));
}

TEST_CASE("error paths") {
  MomentSeq a = MomentSeq::augmentation(4);
  CHECK_THROWS_AS(correct_continuous(a, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(uncorrect_continuous(a, Rational(-1)), std::invalid_argument);
  CHECK_THROWS_AS(correct_discrete(a, Rational(1), 0), std::invalid_argument);
  CHECK_THROWS_AS(uncorrect_discrete(a, Rational(1), -2), std::invalid_argument);
  CHECK_THROWS_AS(correction_kernel(GroupingSpec::continuous(Rational(1)), -1, Direction::ToRaw),
                  std::invalid_argument);

  CorrectionMatrix matrix(GroupingSpec::continuous(Rational(1)), 3, Direction::ToRaw);
  CHECK_THROWS_AS(matrix.apply(MomentSeq::augmentation(5)), std::invalid_argument);
  std::vector<double> empty;
  CHECK_THROWS_AS(matrix.apply(std::span<const double>(empty)), std::invalid_argument);
  std::vector<double> too_long(6, 0.0);
  too_long[0] = 1.0;
  CHECK_THROWS_AS(matrix.apply(std::span<const double>(too_long)), std::invalid_argument);
}
