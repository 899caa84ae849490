#pragma once

#include "shepcor/moments.hpp"

#include <span>
#include <vector>

namespace shepcor {

enum class Direction {
  ToRaw,     ///< grouped moments -> raw moments of the parent
  ToGrouped, ///< raw moments -> grouped moments
};

/// How the data were grouped: class width h, and in the discrete case the
/// lattice divisor m (m consecutive parent values per class of width h).
struct GroupingSpec {
  Rational h;
  int m = 0; // 0 in continuous mode, >= 1 in discrete mode

  static GroupingSpec continuous(Rational width);
  static GroupingSpec discrete(Rational width, int divisor);

  bool is_discrete() const { return m != 0; }
  void validate() const; // throws std::invalid_argument
};

/// The moment sequence whose binomial convolution realizes the correction
/// for the given spec and direction. Continuous: the (scaled) half-shifted
/// Bernoulli or centered uniform sequence; discrete: their convolution at
/// widths h and h/m.
MomentSeq correction_kernel(const GroupingSpec& spec, int max_order, Direction direction);

/// Lower-triangular unipotent transform between grouped and raw moment
/// vectors: entry(n, k) = C(n,k) * g_{n-k} for the correction kernel g.
class CorrectionMatrix {
 public:
  CorrectionMatrix(GroupingSpec spec, int max_order, Direction direction);

  const GroupingSpec& spec() const { return spec_; }
  Direction direction() const { return direction_; }
  int max_order() const { return static_cast<int>(rows_.size()) - 1; }

  /// Zero when k > n.
  Rational entry(int n, int k) const;
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  /// Exact application; input may have order <= max_order().
  MomentSeq apply(const MomentSeq& in) const;

  /// Float lane: same transform with entries converted to double.
  std::vector<double> apply(std::span<const double> in) const;

 private:
  GroupingSpec spec_;
  Direction direction_;
  std::vector<std::vector<Rational>> rows_;
};

CorrectionMatrix correction_matrix(const GroupingSpec& spec, int max_order, Direction direction);

/// Sheppard's correction for a continuous parent:
/// a_n = sum_j C(n,j) (2^{1-j}-1) B_j h^j g_{n-j} for grouped moments g.
MomentSeq correct_continuous(const MomentSeq& grouped, const Rational& h);

/// Inverse map: g_n = sum_{2j<=n} C(n,2j) (h/2)^{2j} a_{n-2j} / (2j+1).
MomentSeq uncorrect_continuous(const MomentSeq& raw, const Rational& h);

/// Correction for a discrete parent on the lattice h/m:
/// a_n = sum_{2k<=n} C(n,2k) (h/2m)^{2k} (2k+1)^{-1}
///         sum_j C(n-2k,j) (2^{1-j}-1) B_j h^j g_{n-2k-j}.
MomentSeq correct_discrete(const MomentSeq& grouped, const Rational& h, int m);

/// Inverse of correct_discrete (binomial convolution with the ToGrouped
/// kernel at widths h and h/m).
MomentSeq uncorrect_discrete(const MomentSeq& raw, const Rational& h, int m);

/// Float-lane variants; the matrix is built exactly, then converted.
std::vector<double> correct_continuous(std::span<const double> grouped, const Rational& h);
std::vector<double> uncorrect_continuous(std::span<const double> raw, const Rational& h);
std::vector<double> correct_discrete(std::span<const double> grouped, const Rational& h, int m);
std::vector<double> uncorrect_discrete(std::span<const double> raw, const Rational& h, int m);

} // namespace shepcor
