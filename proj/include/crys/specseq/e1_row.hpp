#pragma once

#include <map>
#include <string>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/matrix.hpp"
#include "crys/specseq/cosimplicial.hpp"

namespace crys {

/// Row j of the first page for an abelian variety whose H^1 is free of the
/// given rank: the alternating face complex of the levelwise j-th exterior
/// power of CosimplicialModule::primitive. Levels run through bound + 1 so that
/// cohomology is valid on [0, bound].
ChainComplex e1_row(int rank, int j, int bound);

/// Chain endomorphism of e1_row(rank, j, bound) induced by an endomorphism of
/// H^1 (levelwise its direct sum, then the exterior power). Keyed by degree.
std::map<int, SparseIntMatrix> e1_row_endomorphism(const IntMatrix &endo, int j, int bound);

struct DecalageReport {
  bool pass = false;
  int rank = 0, j = 0, bound = 0;
  Coefficients coeffs;
  std::map<int, FinAbGroup> cohomology; // degrees 0..bound
  /// Sym^j of the free module: C(rank + j - 1, j) copies of the coefficients.
  FinAbGroup expected;
  std::string message;
};

/// Checks that row j has cohomology Sym^j(H^1) in degree j and nothing else
/// through the bound.
DecalageReport decalage_check(int rank, int j, int bound, const Coefficients &coeffs);

} // namespace crys
