#include "crys/stackcoh/oracle.hpp"

#include <fmt/format.h>

#include "crys/specseq/multilinear.hpp"

namespace crys {

namespace {

CosimplicialModule zero_module(int top) {
  std::vector<std::vector<SparseIntMatrix>> cof(top + 1);
  for (int i = 1; i <= top; ++i)
    cof[i].assign(i + 1, SparseIntMatrix(0, 0));
  return CosimplicialModule(std::vector<int>(top + 1, 0), std::move(cof));
}

} // namespace

ConstantGroupOracle::ConstantGroupOracle(FinAbGroup g) : g_(std::move(g)) {
  if (!g_.is_finite())
    throw std::invalid_argument("constant group oracle needs a finite group");
}

std::string ConstantGroupOracle::name() const { return fmt::format("constant({})", g_.str()); }

std::int64_t ConstantGroupOracle::rank(int level, int j) const {
  if (j != 0)
    return 0;
  std::int64_t r = 1;
  const auto order = g_.order().get_si();
  for (int i = 0; i < level; ++i)
    r *= order;
  return r;
}

CosimplicialModule ConstantGroupOracle::row(int j, int top) const {
  return j == 0 ? CosimplicialModule::group_cochains(g_, top) : zero_module(top);
}

AbelianModelOracle::AbelianModelOracle(int h1_rank) : rank_(h1_rank) {
  if (h1_rank < 1)
    throw std::invalid_argument("H^1 rank must be positive");
}

std::string AbelianModelOracle::name() const { return fmt::format("abelian(rank H1 = {})", rank_); }

std::int64_t AbelianModelOracle::rank(int level, int j) const { return binomial(rank_ * level, j); }

CosimplicialModule AbelianModelOracle::row(int j, int top) const {
  return CosimplicialModule::exterior_power(CosimplicialModule::primitive(rank_, top), j);
}

std::optional<std::string> check_kunneth_multiplicativity(const CoefficientOracle &o, int max_level, int max_j) {
  for (int i = 0; i <= max_level; ++i)
    for (int k = 0; i + k <= max_level; ++k)
      for (int j = 0; j <= max_j; ++j) {
        std::int64_t sum = 0;
        for (int a = 0; a <= j; ++a)
          sum += o.rank(i, a) * o.rank(k, j - a);
        if (sum != o.rank(i + k, j))
          return fmt::format("{}: rank of H^{} at level {} is {}, tensor of levels {} and {} gives {}", o.name(), j,
                             i + k, o.rank(i + k, j), i, k, sum);
      }
  return std::nullopt;
}

} // namespace crys
