#pragma once

#include <cstdint>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"

namespace crys {

/// Elements of a finite abelian group, coded mixed-radix little-endian over
/// its invariant factors.
class GroupElements {
public:
  explicit GroupElements(const FinAbGroup &g);

  int size() const { return size_; }
  const std::vector<int> &radices() const { return radices_; }
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  std::vector<int> digits(int a) const;

private:
  std::vector<int> radices_;
  int size_ = 1;
  std::vector<int> add_;
  std::vector<int> neg_;
};

struct BarOptions {
  bool normalized = false;
  int max_group_order = 16;
  int max_degree = 5;
  /// Cap on the number of generators in the top degree.
  std::uint64_t budget = std::uint64_t{1} << 20;
};

/// Alternating face complex of the nerve of G, degrees 0..bound. Degree n has
/// basis G^n (or (G - 0)^n when normalized), tuples in lexicographic order.
/// Homology is reliable through bound - 1; the top degree lacks its incoming
/// differential.
ChainComplex bar_complex(const FinAbGroup &g, int bound, const BarOptions &opts = {});

/// Lambda^2 of a finite abelian group: sum over i < j of Z/gcd(d_i, d_j).
FinAbGroup exterior_square(const FinAbGroup &g);

} // namespace crys
