#pragma once

#include <vector>

#include "crys/homology/matrix.hpp"

namespace crys {

/// D = U * M * V with D diagonal, d_1 | d_2 | ... , d_i >= 0, and U, V unimodular.
/// U_inv and V_inv are the exact inverses (kept so callers can move between bases).
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  int rank = 0;

  /// Nonzero diagonal entries, in order.
  std::vector<Integer> invariant_factors() const;
};

/// Serial dense reference implementation. Pivots on the entry of least absolute
/// value to keep intermediate growth down.
SmithForm smith_normal_form(const IntMatrix &m);

/// Diagonal-only variant of the reference: same pivoting, no transforms.
std::vector<Integer> smith_invariant_factors(const IntMatrix &m);

} // namespace crys
