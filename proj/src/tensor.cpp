#include "shepcor/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace shepcor {

MultiIndex::MultiIndex(std::vector<int> orders) : orders_(std::move(orders)) {
  for (int n : orders_)
    if (n < 0) throw std::invalid_argument("moment orders must be nonnegative");
}

bool MultiIndex::is_zero() const {
  for (int n : orders_)
    if (n != 0) return false;
  return true;
}

MultiIndex MultiIndex::with_axis(int axis, int value) const {
  std::vector<int> copy = orders_;
  copy[static_cast<std::size_t>(axis)] = value;
  return MultiIndex(std::move(copy));
}

namespace {

bool unit_value(const Rational& v) { return v == 1; }
bool unit_value(double v) { return std::abs(v - 1.0) <= 1e-9; }

} // namespace

template <class T>
BasicMomentTensor<T>::BasicMomentTensor(std::map<MultiIndex, T> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("moment tensor must not be empty");
  int dims = values_.begin()->first.dims();
  if (dims < 1) throw std::invalid_argument("moment tensor needs at least one axis");
  max_orders_.assign(static_cast<std::size_t>(dims), 0);
  for (const auto& [index, value] : values_) {
    (void)value;
    if (index.dims() != dims)
      throw std::invalid_argument("moment tensor indices must share one dimension");
    for (int k = 0; k < dims; ++k) {
      if (index[k] > max_orders_[static_cast<std::size_t>(k)])
        max_orders_[static_cast<std::size_t>(k)] = index[k];
      if (index[k] > 0 && values_.count(index.with_axis(k, index[k] - 1)) == 0)
        throw std::invalid_argument("moment tensor index set is not downward closed");
    }
  }
  auto zero = values_.find(MultiIndex(std::vector<int>(static_cast<std::size_t>(dims), 0)));
  if (zero == values_.end() || !unit_value(zero->second))
    throw std::invalid_argument("moment tensor must carry total mass one at the zero index");
}

template <class T>
const T& BasicMomentTensor<T>::at(const MultiIndex& index) const {
  auto it = values_.find(index);
  if (it == values_.end()) throw std::out_of_range("moment tensor index not present");
  return it->second;
}

template class BasicMomentTensor<Rational>;
template class BasicMomentTensor<double>;

namespace {

void check_specs(const AxisSpecs& specs, int dims) {
  if (static_cast<int>(specs.size()) != dims)
    throw std::invalid_argument("one grouping spec per tensor axis is required");
  for (const GroupingSpec& spec : specs) spec.validate();
}

template <class T>
T matrix_entry(const CorrectionMatrix& matrix, int n, int k) {
  if constexpr (std::is_same_v<T, Rational>)
    return matrix.entry(n, k);
  else
    return to_double(matrix.entry(n, k));
}

/// One triangular pass along `axis`; every sub-index the sum touches exists
/// by downward closure.
template <class T>
std::map<MultiIndex, T> axis_pass(const std::map<MultiIndex, T>& in,
                                  const CorrectionMatrix& matrix, int axis) {
  std::map<MultiIndex, T> out;
  for (const auto& [index, value] : in) {
    (void)value;
    T acc{};
    for (int s = 0; s <= index[axis]; ++s)
      acc += matrix_entry<T>(matrix, index[axis], s) * in.at(index.with_axis(axis, s));
    out.emplace(index, std::move(acc));
  }
  return out;
}

template <class T>
BasicMomentTensor<T> transform_mv(const BasicMomentTensor<T>& in, const AxisSpecs& specs,
                                  Direction direction) {
  check_specs(specs, in.dims());
  std::map<MultiIndex, T> values = in.values();
  for (int axis = 0; axis < in.dims(); ++axis) {
    CorrectionMatrix matrix(specs[static_cast<std::size_t>(axis)],
                            in.max_orders()[static_cast<std::size_t>(axis)], direction);
    values = axis_pass(values, matrix, axis);
  }
  return BasicMomentTensor<T>(std::move(values));
}

} // namespace

MomentTensor correct_mv(const MomentTensor& grouped, const AxisSpecs& specs) {
  return transform_mv(grouped, specs, Direction::ToRaw);
}

MomentTensorF correct_mv(const MomentTensorF& grouped, const AxisSpecs& specs) {
  return transform_mv(grouped, specs, Direction::ToRaw);
}

MomentTensor uncorrect_mv(const MomentTensor& raw, const AxisSpecs& specs) {
  return transform_mv(raw, specs, Direction::ToGrouped);
}

MomentTensorF uncorrect_mv(const MomentTensorF& raw, const AxisSpecs& specs) {
  return transform_mv(raw, specs, Direction::ToGrouped);
}

std::vector<std::pair<MultiIndex, Rational>> expand_correction_polynomial(
    const MultiIndex& index, const AxisSpecs& specs) {
  check_specs(specs, index.dims());
  std::vector<CorrectionMatrix> matrices;
  matrices.reserve(specs.size());
  for (int k = 0; k < index.dims(); ++k)
    matrices.emplace_back(specs[static_cast<std::size_t>(k)], index[k], Direction::ToRaw);

  std::vector<std::pair<MultiIndex, Rational>> terms;
  std::vector<int> u(static_cast<std::size_t>(index.dims()), 0);
  // Odometer over the box [0, index]; descending lexicographic output order.
  for (int k = 0; k < index.dims(); ++k) u[static_cast<std::size_t>(k)] = index[k];
  while (true) {
    Rational coeff = 1;
    for (int k = 0; k < index.dims(); ++k)
      coeff *= matrices[static_cast<std::size_t>(k)].entry(index[k], u[static_cast<std::size_t>(k)]);
    if (coeff != 0) terms.emplace_back(MultiIndex(u), coeff);
    int k = index.dims() - 1;
    while (k >= 0 && u[static_cast<std::size_t>(k)] == 0) {
      u[static_cast<std::size_t>(k)] = index[k];
      --k;
    }
    if (k < 0) break;
    --u[static_cast<std::size_t>(k)];
  }
  return terms;
}

} // namespace shepcor
