#pragma once

#include <string>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/homotopy.hpp"

namespace crys {

/// The j = 1 row written with closed-form differentials. In level n, with
/// v_(n+1) = 0:
///   n even: (-v1, 0, v2 - v3, 0, v4 - v5, ..., 0, v_n)
///   n odd:  (0, v2, v2, v4, v4, ..., v_(n-1), v_(n-1), 0)
/// Levels 0..bound+1, valid on [0, bound].
ChainComplex hom_complex(int rank, int bound);

/// Contracting homotopy h_i : level i -> level i-1, zero for i <= 2; for odd i
/// it is (-v1, 0, -v3, ..., -v_(i-2), v_i), for even i (0, v2, 0, ..., v_(i-2), 0).
ChainMap hom_contraction(int rank, int bound);

/// Identity in degree 1, zero elsewhere: the retraction onto H^1[-1].
ChainMap hom_projection(int rank);

struct ContractionReport {
  bool pass = false;
  bool matches_cofaces = false;
  std::vector<int> mismatched_degrees; // closed form vs alternating coface sums
  bool square_zero = false;
  bool first_differential_zero = false;
  HomotopyReport homotopy;
  std::string message;
};

/// Builds the closed-form complex and contraction and checks them against the
/// first-principles row, d^2 = 0, d_1 = 0 and dh + hd = id - e.
ContractionReport hom_complex_and_contraction(int rank, int bound, const Integer &modulus = 0);

} // namespace crys
