#include "crys/homology/homotopy.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace crys {

namespace {

IntMatrix fetch(const ChainMap &m, int n, int rows, int cols, const char *what) {
  auto it = m.find(n);
  if (it == m.end())
    return IntMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw std::invalid_argument(fmt::format("{} at degree {} has shape {}x{}, expected {}x{}", what, n,
                                            it->second.rows(), it->second.cols(), rows, cols));
  return it->second;
}

} // namespace

HomotopyReport verify_homotopy(const ChainComplex &c, const ChainMap &f, const ChainMap &g, const ChainMap &h,
                               const Integer &modulus) {
  const bool hom = c.grading() == Grading::Homological;
  for (int n = std::max(c.lo(), c.valid_lo()); n <= std::min(c.hi(), c.valid_hi()); ++n) {
    const int up = hom ? n + 1 : n - 1; // where h sends degree n
    const int dn = c.target(n);
    const int r = c.rank(n);
    IntMatrix fn = fetch(f, n, r, r, "f"), gn = fetch(g, n, r, r, "g");
    IntMatrix hn = fetch(h, n, c.rank(up), r, "h");
    IntMatrix hdn = fetch(h, dn, r, c.rank(dn), "h");
    IntMatrix lhs = c.incoming(n).to_dense() * hn + hdn * c.outgoing(n).to_dense();
    IntMatrix rhs = fn - gn;
    IntMatrix diff = (lhs - rhs).reduced(modulus);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (diff(i, j) != 0) {
          HomotopyReport rep;
          rep.pass = false;
          rep.witness = HomotopyWitness{n, i, j, rhs(i, j), lhs(i, j)};
          rep.message = fmt::format("dh + hd != f - g at degree {}, entry ({}, {}): expected {}, got {}", n, i, j,
                                    rhs(i, j).get_str(), lhs(i, j).get_str());
          return rep;
        }
  }
  return {true, std::nullopt, "ok"};
}

} // namespace crys
