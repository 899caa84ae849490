#include "shepcor/corrections.hpp"

#include "shepcor/umbral.hpp"

#include <stdexcept>

namespace shepcor {

GroupingSpec GroupingSpec::continuous(Rational width) {
  GroupingSpec spec{std::move(width), 0};
  spec.validate();
  return spec;
}

GroupingSpec GroupingSpec::discrete(Rational width, int divisor) {
  if (divisor < 1) throw std::invalid_argument("lattice divisor m must be >= 1");
  GroupingSpec spec{std::move(width), divisor};
  spec.validate();
  return spec;
}

void GroupingSpec::validate() const {
  if (h <= 0) throw std::invalid_argument("grouping width h must be positive");
  if (m < 0) throw std::invalid_argument("lattice divisor m must be >= 1");
}

MomentSeq correction_kernel(const GroupingSpec& spec, int max_order, Direction direction) {
  spec.validate();
  if (max_order < 0) throw std::invalid_argument("order must be nonnegative");
  MomentSeq to_raw_part = scale(sheppard_coeffs(max_order), spec.h);
  MomentSeq to_grouped_part = scale(centered_uniform_moments(max_order), spec.h);
  if (!spec.is_discrete())
    return direction == Direction::ToRaw ? to_raw_part : to_grouped_part;

  Rational sub_width = spec.h / spec.m;
  if (direction == Direction::ToRaw)
    return convolve(to_raw_part, scale(centered_uniform_moments(max_order), sub_width));
  return convolve(to_grouped_part, scale(sheppard_coeffs(max_order), sub_width));
}

CorrectionMatrix::CorrectionMatrix(GroupingSpec spec, int max_order, Direction direction)
    : spec_(std::move(spec)), direction_(direction) {
  MomentSeq kernel = correction_kernel(spec_, max_order, direction_);
  rows_.resize(static_cast<std::size_t>(max_order) + 1);
  for (int n = 0; n <= max_order; ++n) {
    auto brow = binomial_row(n);
    auto& row = rows_[n];
    row.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) row[k] = Rational(brow[k]) * kernel[n - k];
  }
}

Rational CorrectionMatrix::entry(int n, int k) const {
  if (n < 0 || n > max_order() || k < 0 || k > max_order())
    throw std::out_of_range("correction matrix index out of range");
  if (k > n) return Rational(0);
  return rows_[n][k];
}

MomentSeq CorrectionMatrix::apply(const MomentSeq& in) const {
  if (in.max_order() > max_order())
    throw std::invalid_argument("input order exceeds correction matrix order");
  std::vector<Rational> out(static_cast<std::size_t>(in.max_order()) + 1);
  for (int n = 0; n <= in.max_order(); ++n) {
    Rational acc = 0;
    for (int k = 0; k <= n; ++k) acc += rows_[n][k] * in[k];
    out[n] = acc;
  }
  return MomentSeq(std::move(out));
}

std::vector<double> CorrectionMatrix::apply(std::span<const double> in) const {
  if (in.empty()) throw std::invalid_argument("moment sequence must not be empty");
  if (static_cast<int>(in.size()) - 1 > max_order())
    throw std::invalid_argument("input order exceeds correction matrix order");
  std::vector<double> out(in.size());
  for (std::size_t n = 0; n < in.size(); ++n) {
    double acc = 0;
    for (std::size_t k = 0; k <= n; ++k) acc += to_double(rows_[n][k]) * in[k];
    out[n] = acc;
  }
  return out;
}

CorrectionMatrix correction_matrix(const GroupingSpec& spec, int max_order, Direction direction) {
  return CorrectionMatrix(spec, max_order, direction);
}

namespace {

void check_width(const Rational& h) {
  if (h <= 0) throw std::invalid_argument("grouping width h must be positive");
}

void check_divisor(int m) {
  if (m < 1) throw std::invalid_argument("lattice divisor m must be >= 1");
}

std::vector<double> apply_float(std::span<const double> in, const GroupingSpec& spec,
                                Direction direction) {
  if (in.empty()) throw std::invalid_argument("moment sequence must not be empty");
  CorrectionMatrix matrix(spec, static_cast<int>(in.size()) - 1, direction);
  return matrix.apply(in);
}

} // namespace

MomentSeq correct_continuous(const MomentSeq& grouped, const Rational& h) {
  check_width(h);
  int n_max = grouped.max_order();
  MomentSeq coeffs = sheppard_coeffs(n_max);
  std::vector<Rational> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto row = binomial_row(n);
    Rational acc = 0;
    Rational h_pow = 1;
    for (int j = 0; j <= n; ++j) {
      acc += Rational(row[j]) * coeffs[j] * h_pow * grouped[n - j];
      h_pow *= h;
    }
    out[n] = acc;
  }
  return MomentSeq(std::move(out));
}

MomentSeq uncorrect_continuous(const MomentSeq& raw, const Rational& h) {
  check_width(h);
  int n_max = raw.max_order();
  Rational half_h = h / 2;
  std::vector<Rational> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto row = binomial_row(n);
    Rational acc = 0;
    for (int j = 0; 2 * j <= n; ++j)
      acc += Rational(row[2 * j]) * rational_pow(half_h, 2 * j) * raw[n - 2 * j] / Rational(2 * j + 1);
    out[n] = acc;
  }
  return MomentSeq(std::move(out));
}

MomentSeq correct_discrete(const MomentSeq& grouped, const Rational& h, int m) {
  check_width(h);
  check_divisor(m);
  int n_max = grouped.max_order();
  MomentSeq coeffs = sheppard_coeffs(n_max);
  Rational half_sub = h / (2 * m);
  std::vector<Rational> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto row = binomial_row(n);
    Rational acc = 0;
    for (int k = 0; 2 * k <= n; ++k) {
      Rational outer = Rational(row[2 * k]) * rational_pow(half_sub, 2 * k) / Rational(2 * k + 1);
      int rem = n - 2 * k;
      auto inner_row = binomial_row(rem);
      Rational inner = 0;
      Rational h_pow = 1;
      for (int j = 0; j <= rem; ++j) {
        inner += Rational(inner_row[j]) * coeffs[j] * h_pow * grouped[rem - j];
        h_pow *= h;
      }
      acc += outer * inner;
    }
    out[n] = acc;
  }
  return MomentSeq(std::move(out));
}

MomentSeq uncorrect_discrete(const MomentSeq& raw, const Rational& h, int m) {
  check_width(h);
  check_divisor(m);
  MomentSeq kernel =
      correction_kernel(GroupingSpec::discrete(h, m), raw.max_order(), Direction::ToGrouped);
  return convolve(raw, kernel);
}

std::vector<double> correct_continuous(std::span<const double> grouped, const Rational& h) {
  return apply_float(grouped, GroupingSpec::continuous(h), Direction::ToRaw);
}

std::vector<double> uncorrect_continuous(std::span<const double> raw, const Rational& h) {
  return apply_float(raw, GroupingSpec::continuous(h), Direction::ToGrouped);
}

std::vector<double> correct_discrete(std::span<const double> grouped, const Rational& h, int m) {
  return apply_float(grouped, GroupingSpec::discrete(h, m), Direction::ToRaw);
}

std::vector<double> uncorrect_discrete(std::span<const double> raw, const Rational& h, int m) {
  return apply_float(raw, GroupingSpec::discrete(h, m), Direction::ToGrouped);
}

} // namespace shepcor
