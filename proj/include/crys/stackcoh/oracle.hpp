#pragma once

#include <memory>
#include <optional>
#include <string>

#include "crys/homology/fin_ab_group.hpp"
#include "crys/specseq/cosimplicial.hpp"

namespace crys {

/// Coefficient cohomology of the levels of a Cech nerve: row j assigns to level
/// i the free module H^j(level i) with its cofaces.
class CoefficientOracle {
public:
  virtual ~CoefficientOracle() = default;
  virtual std::string name() const = 0;
  /// Rank of H^j at level i.
  virtual std::int64_t rank(int level, int j) const = 0;
  /// Row j through the given top level.
  virtual CosimplicialModule row(int j, int top) const = 0;
};

/// Constant group scheme: level i is a disjoint union of |G|^i points, so only
/// H^0 = functions on G^i survives.
class ConstantGroupOracle : public CoefficientOracle {
public:
  explicit ConstantGroupOracle(FinAbGroup g);
  std::string name() const override;
  std::int64_t rank(int level, int j) const override;
  CosimplicialModule row(int j, int top) const override;
  const FinAbGroup &group() const { return g_; }

private:
  FinAbGroup g_;
};

/// Abelian variety with H^1 free of the given rank: H^j(A^i) = Lambda^j of
/// (H^1)^{+i}.
class AbelianModelOracle : public CoefficientOracle {
public:
  explicit AbelianModelOracle(int h1_rank);
  std::string name() const override;
  std::int64_t rank(int level, int j) const override;
  CosimplicialModule row(int j, int top) const override;
  int h1_rank() const { return rank_; }

private:
  int rank_;
};

/// Checks rank(i + i', j) = sum_{a + b = j} rank(i, a) rank(i', b) for
/// levels and degrees up to the bounds; returns a description of the first
/// failure.
std::optional<std::string> check_kunneth_multiplicativity(const CoefficientOracle &o, int max_level, int max_j);

} // namespace crys
