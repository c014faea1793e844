#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/matrix.hpp"

namespace crys {

/// First-quadrant double complex of free modules C^{i,j}, 0 <= i <= columns-1,
/// 0 <= j <= rows-1. Horizontal maps raise i, vertical maps raise j; they
/// square to zero and anticommute (checked on construction).
class DoubleComplex {
public:
  using Index = std::pair<int, int>;
  /// ranks[i][j]; maps keyed by source (i, j); missing maps are zero.
  DoubleComplex(std::vector<std::vector<int>> ranks, std::map<Index, IntMatrix> horizontal,
                std::map<Index, IntMatrix> vertical);

  int columns() const { return static_cast<int>(ranks_.size()); }
  int rows() const { return ranks_.empty() ? 0 : static_cast<int>(ranks_[0].size()); }
  int rank(int i, int j) const;
  IntMatrix horizontal(int i, int j) const;
  IntMatrix vertical(int i, int j) const;
  /// Total cochain complex; degree n has the blocks C^{i, n-i} in increasing i.
  ChainComplex total() const;
  /// Row j with its horizontal differential.
  ChainComplex row(int j) const;

private:
  std::vector<std::vector<int>> ranks_;
  std::map<Index, IntMatrix> horizontal_, vertical_;
};

struct SpectralSequencePage {
  int r = 2;
  /// E_r^{i,j} for i + j within the computed range; absent cells are zero.
  std::map<std::pair<int, int>, FinAbGroup> entries;
  FinAbGroup at(int i, int j) const;
};

struct DegeneracyWitness {
  int i = 0, j = 0, r = 0; // d_r out of (i, j) has nonzero source and target
};

/// Bidegree argument: every d_r (r >= 2) leaving a nonzero E_2 cell of total
/// degree <= max lands in a zero cell.
struct DegenerationCertificate {
  bool holds = false;
  int sources_checked = 0;
  std::optional<DegeneracyWitness> witness;
  std::string str() const;
};

struct SpectralSequenceResult {
  int max_total = 0;
  Coefficients coeffs;
  /// pages.front() is E_2; pages.back() is E_infinity when determined.
  std::vector<SpectralSequencePage> pages;
  DegenerationCertificate certificate;
  bool determined = false;
  std::string status;
  /// Associated graded of the abutment: total degree n -> E_inf^{i, n-i}, i = 0..n.
  std::map<int, std::vector<FinAbGroup>> graded;
  /// The abutment itself where known: from the model's total complex, or when
  /// a single graded piece is nonzero.
  std::map<int, FinAbGroup> abutment;
};

/// rows[j] is the E_1 row j as a cochain complex in i. E_2^{i,j} = H^i(row j).
/// Row j must be valid through max_total - j; cells of total degree
/// max_total + 1 are needed only as targets of d_r out of nonzero cells and are
/// then looked up in the rows as well. With a model, higher pages are computed
/// from its column filtration and its E_2 must agree with the rows.
SpectralSequenceResult run_spectral_sequence(const std::vector<ChainComplex> &rows, int max_total,
                                             const Coefficients &coeffs = {},
                                             const DoubleComplex *model = nullptr);

/// E_r of the column filtration F^p = sum_{i >= p} C^{i,.} in total degrees
/// <= max_total, r >= 1.
SpectralSequencePage filtered_page(const DoubleComplex &c, int r, int max_total, const Coefficients &coeffs = {});

/// The zero cochain complex on degrees 0..top.
ChainComplex zero_row(int top);

} // namespace crys
