#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"

namespace crys {

/// Coefficient ring Z (modulus 0) or Z/q. W_N(F_p) is Z/p^N.
struct Coefficients {
  Integer modulus = 0;

  static Coefficients integers() { return {}; }
  static Coefficients mod(const Integer &q) { return {q}; }
  static Coefficients witt(int p, int N);
  bool integral() const { return modulus == 0; }
  std::string str() const;
};

enum class DegreeStatus { Ok, OutOfRange, Truncated };

struct HomologyEntry {
  int degree = 0;
  DegreeStatus status = DegreeStatus::Ok;
  FinAbGroup group;
};

/// Cone of multiplication by q on the whole complex; its integral homology is
/// the homology of C tensor Z/q, degree for degree.
ChainComplex coefficient_cone(const ChainComplex &c, const Integer &q);

/// Homology in the requested degrees. Degrees outside [lo, hi] come back empty
/// and flagged OutOfRange; degrees past the complex's valid range are computed
/// but flagged Truncated. Uses the sparse parallel kernel on the integral
/// differentials; Z/q coefficients follow by universal coefficients.
std::vector<HomologyEntry> homology(const ChainComplex &c, std::span<const int> degrees,
                                   const Coefficients &coeffs = {});
/// Every degree of the complex.
std::map<int, FinAbGroup> homology(const ChainComplex &c, const Coefficients &coeffs = {});
FinAbGroup homology_at(const ChainComplex &c, int degree, const Coefficients &coeffs = {});

/// Same computation through the serial dense reference Smith form, with Z/q
/// coefficients taken through coefficient_cone instead.
std::map<int, FinAbGroup> homology_reference(const ChainComplex &c, const Coefficients &coeffs = {});

std::string status_name(DegreeStatus s);

} // namespace crys
