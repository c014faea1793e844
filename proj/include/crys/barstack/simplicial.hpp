#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"

namespace crys {

/// Finite simplicial abelian group through a top level, given by face tables.
/// Level n is a product of cyclic groups; elements are coded mixed-radix
/// little-endian over radices[n].
struct SimplicialGroup {
  std::vector<std::vector<int>> radices;
  /// faces[n][i][x] = d_i(x) for x in level n, 1 <= n <= top, 0 <= i <= n
  std::vector<std::vector<std::vector<std::uint32_t>>> faces;

  int top() const { return static_cast<int>(radices.size()) - 1; }
  std::uint64_t size(int n) const;
  std::uint32_t add(int n, std::uint32_t a, std::uint32_t b) const;

  /// The constant simplicial group on G.
  static SimplicialGroup constant(const FinAbGroup &g, int top);
  /// d_i d_j = d_{j-1} d_i for i < j; returns a description of the first failure.
  std::optional<std::string> check_identities() const;
  /// Free abelian group on each level, alternating face differential.
  ChainComplex chains() const;
};

/// Classifying construction Wbar: level n is B_{n-1} x ... x B_0. Levels of the
/// result go up to min(top(B) + 1, top).
SimplicialGroup classifying(const SimplicialGroup &b, int top, std::uint64_t budget);

struct KanModel {
  ChainComplex complex;
  /// Degrees whose homology is asserted by the vanishing/Hurewicz pattern.
  int verified_through = 0;
};

/// Chains on the n-fold iterated classifying construction of G, a model of
/// K(G, n). Built through degree bound + 1 so homology is exact through bound;
/// degrees above n + 1 are reported as beyond the verified range.
KanModel kan_classifying(const FinAbGroup &g, int iterations, int bound,
                         std::uint64_t budget = std::uint64_t{1} << 20);

} // namespace crys
