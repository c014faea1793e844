#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crys/barstack/bar.hpp"
#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/matrix.hpp"
#include "crys/homology/tower.hpp"
#include "crys/specseq/spectral_sequence.hpp"

namespace crys {

struct StackOptions {
  /// Top index of the towers (coefficient length for constant groups, group
  /// level for p-divisible ones); 0 picks one long enough to stabilize.
  int tower_top = 0;
  int window = 3;
  bool towers = true;
  /// Caps on group order, degree and cochain count, as for bar complexes.
  BarOptions budget;
};

struct AssertionOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DegreeTower {
  Tower tower;
  std::optional<TowerLimit> limit;
  std::string note;
};

struct StackCohomologyResult {
  std::string description;
  int p = 0, N = 0, bound = 0;
  /// H^i with W_N coefficients (for p-divisible groups: the limit over levels).
  std::map<int, FinAbGroup> cohomology;
  /// What the tower index runs over.
  std::string tower_index;
  std::map<int, DegreeTower> towers;
  /// Stable values read off the towers.
  std::map<int, FinAbGroup> stable;
  std::optional<std::string> lim1;
  std::optional<std::string> sigma_twist;
  std::optional<DegenerationCertificate> certificate;
  /// Frobenius transported to H^{2j}, in the basis of cup monomials.
  std::map<int, IntMatrix> frobenius;
  std::vector<AssertionOutcome> assertions;

  bool all_pass() const;
};

/// Tower of H^degree(C; Z/p^k), k = 1..top, with the maps induced by reducing
/// coefficients. Built from the integral invariant factors of the adjacent
/// differentials (the complex splits into elementary pieces over Z).
Tower reduction_tower(const ChainComplex &cochains, int degree, int p, int top);
/// Same tower from explicit cocycle representatives; dense, for testing.
Tower reduction_tower_reference(const ChainComplex &cochains, int degree, int p, int top);

/// H^*(BG; W_N) for a constant p-group G through the bound: row 0 of the
/// first page is the group cochain complex, all other rows vanish.
StackCohomologyResult constant_group_stack_cohomology(const FinAbGroup &g, int p, int N, int bound,
                                                      const StackOptions &opts = {});

/// |H^1(BG; W_n)| = |H^2(BG)[p^n]| for n = 1..max_n, with H^2(BG) the stable
/// limit; needs the towers of degrees 1 and 2.
std::vector<AssertionOutcome> bockstein_identity(const StackCohomologyResult &r, int max_n);

/// Abelian variety model with H^1 free of rank 2g over W_N(F_p). The optional
/// Frobenius (2g x 2g) is transported to H^{2j} and compared with Sym^j of it.
StackCohomologyResult abelian_model_stack_cohomology(int g, int p, int N, int bound,
                                                     const std::optional<IntMatrix> &frobenius = std::nullopt);

/// (Q_p/Z_p)^h through its levels (Z/p^n)^h: towers over n with the maps
/// induced by the inclusions, their limits, and the Sym structure.
StackCohomologyResult pdivisible_stack_cohomology(int h, int p, int N, int bound, const StackOptions &opts = {});

struct DieudonneComparison {
  std::string entry;
  int p = 0, N = 0;
  FinAbGroup stack_side;
  FinAbGroup dieudonne_side;
  bool pass = false;
  std::string sigma_twist;
};

/// H^2 of the classifying stack against the catalog Dieudonne module of an
/// etale entry at truncation N. Throws OutOfScope for non-etale entries.
DieudonneComparison compare_with_dieudonne(const std::string &entry, int p, int N);

/// H^n(B(G1 x G2); W_N) against the Kunneth assembly of the integral
/// cohomology of the factors, for n <= max_degree.
std::vector<AssertionOutcome> product_compatibility(const FinAbGroup &g1, const FinAbGroup &g2, int p, int N,
                                                    int max_degree);

} // namespace crys
