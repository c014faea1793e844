#include "crys/barstack/cyclic.hpp"

#include <map>
#include <stdexcept>

namespace crys {

ChainComplex cyclic_resolution_complex(long n, int top) {
  long orders[1] = {n};
  return product_resolution_complex(orders, top);
}

GradedGroup cyclic_resolution_homology(long n, const Coefficients &coeffs, int bound) {
  if (n < 2)
    throw std::invalid_argument("cyclic order must be >= 2");
  auto h = homology(cyclic_resolution_complex(n, bound + 1), coeffs);
  h.erase(bound + 1);
  return h;
}

std::vector<std::vector<int>> compositions(int k, int r) {
  std::vector<std::vector<int>> out;
  if (r == 0) {
    if (k == 0)
      out.push_back({});
    return out;
  }
  std::vector<int> cur(r, 0);
  // lexicographic: first part varies slowest
  auto rec = [&](auto &&self, int pos, int left) -> void {
    if (pos == r - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  rec(rec, 0, k);
  return out;
}

ChainComplex product_resolution_complex(std::span<const long> orders, int top) {
  const int r = static_cast<int>(orders.size());
  for (long m : orders)
    if (m < 1)
      throw std::invalid_argument("cyclic orders must be positive");
  std::vector<std::vector<std::vector<int>>> basis(top + 1);
  std::vector<std::map<std::vector<int>, int>> index(top + 1);
  std::vector<int> ranks(top + 1);
  for (int k = 0; k <= top; ++k) {
    basis[k] = compositions(k, r);
    for (std::size_t i = 0; i < basis[k].size(); ++i)
      index[k][basis[k][i]] = static_cast<int>(i);
    ranks[k] = static_cast<int>(basis[k].size());
  }
  std::map<int, SparseIntMatrix> d;
  for (int k = 1; k <= top; ++k) {
    SparseIntMatrix m(ranks[k - 1], ranks[k]);
    for (int j = 0; j < ranks[k]; ++j) {
      const auto &e = basis[k][j];
      SparseIntMatrix::Column col;
      int sign_deg = 0;
      for (int s = 0; s < r; ++s) {
        // the factor differential is multiplication by m_s from even positive degrees
        if (e[s] > 0 && e[s] % 2 == 0) {
          auto f = e;
          --f[s];
          col.push_back({index[k - 1].at(f), (sign_deg % 2 ? -1 : 1) * orders[s]});
        }
        sign_deg += e[s];
      }
      m.set_column(j, std::move(col));
    }
    d.emplace(k, std::move(m));
  }
  return ChainComplex::make(Grading::Homological, 0, std::move(ranks), std::move(d));
}

ChainMap product_resolution_inclusion(std::span<const long> from, std::span<const long> to, int top) {
  if (from.size() != to.size())
    throw std::invalid_argument("inclusion between products of different lengths");
  const int r = static_cast<int>(from.size());
  std::vector<long> mult(r);
  for (int s = 0; s < r; ++s) {
    if (from[s] < 1 || to[s] % from[s] != 0)
      throw std::invalid_argument("inclusion needs m_i | m'_i");
    mult[s] = to[s] / from[s];
  }
  ChainMap f;
  for (int k = 0; k <= top; ++k) {
    auto b = compositions(k, r);
    const int n = static_cast<int>(b.size());
    IntMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
      Integer c = 1;
      for (int s = 0; s < r; ++s)
        if (b[j][s] % 2 == 1)
          c *= mult[s];
      m(j, j) = c;
    }
    f[k] = std::move(m);
  }
  return f;
}

} // namespace crys
