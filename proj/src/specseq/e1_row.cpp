#include "crys/specseq/e1_row.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "crys/specseq/multilinear.hpp"

namespace crys {

ChainComplex e1_row(int rank, int j, int bound) {
  if (rank < 0 || j < 0 || bound < 0)
    throw std::invalid_argument("e1_row needs rank, j, bound >= 0");
  auto c = CosimplicialModule::exterior_power(CosimplicialModule::primitive(rank, bound + 1), j);
  return alternating_face_complex(c).with_valid_range(0, bound);
}

std::map<int, SparseIntMatrix> e1_row_endomorphism(const IntMatrix &endo, int j, int bound) {
  if (endo.rows() != endo.cols())
    throw std::invalid_argument("endomorphism must be square");
  const int r = endo.rows();
  const auto block = SparseIntMatrix::from_dense(endo);
  std::map<int, SparseIntMatrix> out;
  for (int i = 0; i <= bound + 1; ++i) {
    SparseIntMatrix sum(r * i, r * i);
    for (int s = 0; s < i; ++s)
      for (int c = 0; c < r; ++c) {
        SparseIntMatrix::Column col;
        for (const auto &e : block.column(c))
          col.push_back({e.row + s * r, e.value});
        sum.set_column(s * r + c, std::move(col));
      }
    out.emplace(i, exterior_power(sum, j));
  }
  return out;
}

DecalageReport decalage_check(int rank, int j, int bound, const Coefficients &coeffs) {
  DecalageReport rep;
  rep.rank = rank;
  rep.j = j;
  rep.bound = bound;
  rep.coeffs = coeffs;
  const int sym = static_cast<int>(binomial(rank + j - 1, j));
  if (coeffs.integral()) {
    rep.expected = FinAbGroup::free(sym);
  } else {
    std::vector<Integer> orders(sym, coeffs.modulus);
    rep.expected = FinAbGroup::from_orders(orders);
  }
  const auto row = e1_row(rank, j, bound);
  std::vector<int> degrees;
  for (int n = 0; n <= bound; ++n)
    degrees.push_back(n);
  rep.pass = true;
  for (auto &e : homology(row, degrees, coeffs)) {
    rep.cohomology[e.degree] = e.group;
    const FinAbGroup want = e.degree == j ? rep.expected : FinAbGroup::zero();
    if (rep.pass && !(e.group == want)) {
      rep.pass = false;
      rep.message = fmt::format("degree {}: got {}, expected {}", e.degree, e.group.str(), want.str());
    }
  }
  if (rep.pass)
    rep.message = fmt::format("Sym^{} of rank {} = {} in degree {}, zero elsewhere through {}", j, rank,
                              rep.expected.str(), j, bound);
  return rep;
}

} // namespace crys
