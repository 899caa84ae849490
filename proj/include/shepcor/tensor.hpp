#pragma once

#include "shepcor/corrections.hpp"

#include <compare>
#include <map>
#include <utility>
#include <vector>

namespace shepcor {

/// Multi-index (n_1, ..., n_d) of componentwise moment orders.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> orders);

  int dims() const { return static_cast<int>(orders_.size()); }
  int operator[](int axis) const { return orders_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& orders() const { return orders_; }

  bool is_zero() const;
  /// Copy with the given axis replaced.
  MultiIndex with_axis(int axis, int value) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> orders_;
};

/// Per-axis grouping of a multivariate parent; axes may mix continuous and
/// discrete modes.
using AxisSpecs = std::vector<GroupingSpec>;

/// Mixed moments E[prod_k X_k^{t_k}] stored on a downward-closed index set:
/// whenever t is present, so is every componentwise-smaller index. The zero
/// index carries the total mass 1.
template <class T>
class BasicMomentTensor {
 public:
  /// Throws std::invalid_argument when the set is empty, mixes dimensions,
  /// is not downward closed, or the zero index is missing or not one.
  explicit BasicMomentTensor(std::map<MultiIndex, T> values);

  int dims() const { return static_cast<int>(max_orders_.size()); }
  const std::vector<int>& max_orders() const { return max_orders_; }
  const std::map<MultiIndex, T>& values() const { return values_; }

  bool contains(const MultiIndex& index) const { return values_.count(index) != 0; }
  const T& at(const MultiIndex& index) const;

  bool operator==(const BasicMomentTensor&) const = default;

 private:
  std::map<MultiIndex, T> values_;
  std::vector<int> max_orders_;
};

using MomentTensor = BasicMomentTensor<Rational>;
using MomentTensorF = BasicMomentTensor<double>;

/// Grouped -> raw mixed moments, one triangular pass per axis.
MomentTensor correct_mv(const MomentTensor& grouped, const AxisSpecs& specs);
MomentTensorF correct_mv(const MomentTensorF& grouped, const AxisSpecs& specs);

/// Raw -> grouped mixed moments; exact inverse of correct_mv.
MomentTensor uncorrect_mv(const MomentTensor& raw, const AxisSpecs& specs);
MomentTensorF uncorrect_mv(const MomentTensorF& raw, const AxisSpecs& specs);

/// The corrected moment at `index` written out as a combination of grouped
/// moments: pairs (u, c) with u <= index componentwise and c the product of
/// the per-axis matrix entries. Zero coefficients are dropped; terms are
/// listed from the leading index downwards.
std::vector<std::pair<MultiIndex, Rational>> expand_correction_polynomial(
    const MultiIndex& index, const AxisSpecs& specs);

} // namespace shepcor
