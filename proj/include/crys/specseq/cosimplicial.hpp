#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/matrix.hpp"

namespace crys {

/// Failure of delta^l delta^k = delta^k delta^(l-1) (k < l) into `level`.
class CosimplicialIdentityError : public std::invalid_argument {
public:
  CosimplicialIdentityError(int level, int k, int l);
  int level, k, l;
};

/// Truncated cosimplicial free module: levels 0..top with the given ranks and
/// cofaces delta^k : level i-1 -> level i, 0 <= k <= i. The identities are
/// checked on construction.
class CosimplicialModule {
public:
  /// cofaces[i][k] for 1 <= i <= top; cofaces[0] must be empty.
  CosimplicialModule(std::vector<int> ranks, std::vector<std::vector<SparseIntMatrix>> cofaces);

  int top() const { return static_cast<int>(ranks_.size()) - 1; }
  int rank(int level) const { return ranks_.at(level); }
  const SparseIntMatrix &coface(int level, int k) const { return cofaces_.at(level).at(k); }

  /// Levels 0..top, every object a single copy of Z.
  static CosimplicialModule constant(int top);
  /// Level i is (Z^rank)^i; delta^0 prepends 0, delta^k (0 < k < i) repeats the
  /// k-th summand, delta^i appends 0. This is the H^1 row of an abelian variety.
  static CosimplicialModule primitive(int rank, int top);
  /// Levelwise j-th exterior power.
  static CosimplicialModule exterior_power(const CosimplicialModule &c, int j);
  /// Level i is the functions G^i -> Z; cofaces dual to the nerve faces.
  static CosimplicialModule group_cochains(const FinAbGroup &g, int top);

private:
  std::vector<int> ranks_;
  std::vector<std::vector<SparseIntMatrix>> cofaces_;
};

/// Cochain complex with d^i = sum_k (-1)^k delta^k out of level i, degrees
/// 0..top, valid through top - 1.
ChainComplex alternating_face_complex(const CosimplicialModule &c);

} // namespace crys
