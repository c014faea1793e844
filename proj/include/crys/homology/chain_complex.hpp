#pragma once

#include <map>
#include <vector>

#include "crys/homology/matrix.hpp"

namespace crys {

enum class Grading { Homological, Cohomological };

/// Bounded complex of free Z-modules C_lo .. C_hi. For homological grading the
/// differential out of degree n goes to n-1; for cohomological grading to n+1.
/// Differentials use the column convention: rows index the target basis.
class ChainComplex {
public:
  ChainComplex() = default;

  /// `differentials` maps a source degree to its outgoing matrix. Missing
  /// entries are zero. Shapes and d o d = 0 are checked.
  static ChainComplex make(Grading grading, int lo, std::vector<int> ranks,
                           std::map<int, SparseIntMatrix> differentials);

  Grading grading() const { return grading_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  int rank(int n) const;
  /// Differential leaving degree n (a 0-row or 0-column matrix when trivial).
  const SparseIntMatrix &outgoing(int n) const;
  /// Differential arriving at degree n.
  const SparseIntMatrix &incoming(int n) const;
  /// Degree where the outgoing differential of n lands.
  int target(int n) const { return grading_ == Grading::Homological ? n - 1 : n + 1; }

  /// Degrees whose homology is trustworthy when the complex is a truncation of
  /// a longer one. Defaults to [lo, hi].
  int valid_lo() const { return valid_lo_; }
  int valid_hi() const { return valid_hi_; }
  ChainComplex with_valid_range(int lo, int hi) const;
  bool degree_valid(int n) const;

  /// Same complex with degrees negated and grading flipped.
  ChainComplex regraded() const;
  /// result degree n = this degree n - k.
  ChainComplex shifted(int k) const;
  /// Hom(-, Z): same degrees, transposed differentials, opposite direction.
  ChainComplex dual() const;

private:
  Grading grading_ = Grading::Homological;
  int lo_ = 0;
  std::vector<int> ranks_;
  std::vector<SparseIntMatrix> out_; // out_[k] leaves degree lo_ + k
  std::vector<SparseIntMatrix> zero_in_; // rank(n) x 0, for degrees with nothing arriving
  SparseIntMatrix empty_;
  int valid_lo_ = 0;
  int valid_hi_ = 0;
};

} // namespace crys
