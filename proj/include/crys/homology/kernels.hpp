#pragma once

#include <cstddef>
#include <vector>

#include "crys/homology/matrix.hpp"

namespace crys {

struct EliminationStats {
  std::size_t unit_pivots = 0;
  int residual_rows = 0;
  int residual_cols = 0;
  bool overflowed = false;
};

/// Invariant factors (nonzero diagonal of the Smith form) of a sparse integer
/// matrix. Eliminates unit pivots sparsely in machine words, choosing short
/// columns and sparse rows first, and hands whatever is left (or everything,
/// on overflow) to a parallel dense arbitrary-precision reduction.
std::vector<Integer> invariant_factors(const SparseIntMatrix &m, EliminationStats *stats = nullptr);

/// Dense arbitrary-precision reduction with OpenMP row and column updates.
std::vector<Integer> dense_invariant_factors(IntMatrix m);

} // namespace crys
