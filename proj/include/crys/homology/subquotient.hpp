#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/matrix.hpp"

namespace crys {

// Lattices are given by matrices whose columns generate them.

/// A Z-basis (independent columns) of the span of the columns of gens.
IntMatrix lattice_basis(const IntMatrix &gens);
/// Basis of {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix &a);
/// Basis of {x : A x lies in span(t)}.
IntMatrix preimage_basis(const IntMatrix &a, const IntMatrix &t);
/// Basis of span(a) intersect span(b) (same ambient dimension).
IntMatrix intersection_basis(const IntMatrix &a, const IntMatrix &b);
/// y with B y = v, for B with independent columns; nullopt when v is not in span(B).
std::optional<std::vector<Integer>> solve_in_lattice(const IntMatrix &b, std::span<const Integer> v);

/// Quotient of a lattice K (given by a basis) by a sublattice generated by D,
/// with chosen cyclic generators and coordinates.
class Subquotient {
public:
  Subquotient() = default;
  Subquotient(IntMatrix numerator_basis, const IntMatrix &denominator);

  const FinAbGroup &group() const { return group_; }
  int ambient_dim() const { return numerator_.rows(); }
  /// Ambient representatives of the cyclic generators: torsion first in the
  /// group's invariant-factor order, then the free generators.
  const IntMatrix &generators() const { return generators_; }
  /// Order of each generator, 0 for free ones.
  const std::vector<Integer> &orders() const { return orders_; }
  /// Coordinates of v (which must lie in the numerator) on the generators,
  /// torsion coordinates reduced into [0, d).
  std::vector<Integer> coordinates(std::span<const Integer> v) const;
  bool contains(std::span<const Integer> v) const;
  /// v in the numerator maps to zero.
  bool is_trivial_class(std::span<const Integer> v) const;

private:
  IntMatrix numerator_;
  IntMatrix P_;             // change of numerator coordinates
  std::vector<int> kept_;   // indices of non-unit diagonal positions
  std::vector<Integer> orders_;
  IntMatrix generators_;
  FinAbGroup group_;
};

/// Matrix of the map between subquotients induced by an ambient linear map f
/// (rows: target generators, columns: source generators), entries reduced.
IntMatrix induced_map(const Subquotient &src, const Subquotient &dst, const IntMatrix &f);

/// Homology at a degree with explicit generators: ker(out) / im(in), or with
/// Z/q coefficients {x : out x = 0 mod q} / (im(in) + qZ^n).
Subquotient homology_subquotient(const IntMatrix &incoming, const IntMatrix &outgoing, int dim,
                                 const Integer &modulus = 0);
Subquotient homology_subquotient(const ChainComplex &c, int degree, const Integer &modulus = 0);

} // namespace crys
