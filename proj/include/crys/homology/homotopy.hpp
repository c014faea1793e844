#pragma once

#include <map>
#include <optional>
#include <string>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/matrix.hpp"

namespace crys {

/// Degree-indexed family of matrices; missing degrees are zero.
using ChainMap = std::map<int, IntMatrix>;

struct HomotopyWitness {
  int degree = 0;
  int row = 0;
  int col = 0;
  Integer expected; // entry of f - g
  Integer actual;   // entry of d h + h d
};

struct HomotopyReport {
  bool pass = true;
  std::optional<HomotopyWitness> witness;
  std::string message;
};

/// Checks d h + h d = f - g in every valid degree of c, exactly or modulo `modulus`.
/// h is keyed by source degree and points against the differential.
HomotopyReport verify_homotopy(const ChainComplex &c, const ChainMap &f, const ChainMap &g, const ChainMap &h,
                               const Integer &modulus = 0);

} // namespace crys
