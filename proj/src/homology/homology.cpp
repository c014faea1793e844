#include "crys/homology/homology.hpp"

#include <algorithm>
#include <stdexcept>

#include "crys/homology/kernels.hpp"
#include "crys/homology/smith.hpp"

namespace crys {

Coefficients Coefficients::witt(int p, int N) {
  if (!is_prime(p) || N < 1)
    throw std::invalid_argument("W_N(F_p) needs prime p and N >= 1");
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, N);
  return {q};
}

std::string Coefficients::str() const { return integral() ? "Z" : "Z/" + modulus.get_str(); }

std::string status_name(DegreeStatus s) {
  switch (s) {
  case DegreeStatus::Ok:
    return "ok";
  case DegreeStatus::OutOfRange:
    return "out of range";
  case DegreeStatus::Truncated:
    return "truncated";
  }
  return "?";
}

namespace {

ChainComplex homological_cone(const ChainComplex &c, const Integer &q) {
  if (!q.fits_slong_p())
    throw std::invalid_argument("coefficient modulus too large for the sparse kernel");
  const std::int64_t qq = q.get_si();
  const int lo = c.lo(), hi = c.hi() + 1;
  std::vector<int> ranks;
  for (int n = lo; n <= hi; ++n)
    ranks.push_back(c.rank(n - 1) + c.rank(n));
  std::map<int, SparseIntMatrix> d;
  for (int n = lo + 1; n <= hi; ++n) {
    // (a, b) in C_{n-1} + C_n  |->  (-da, q a + db) in C_{n-2} + C_{n-1}
    const int a = c.rank(n - 1), b = c.rank(n), a2 = c.rank(n - 2);
    SparseIntMatrix dam = c.outgoing(n - 1).scaled(-1);
    SparseIntMatrix db = n <= c.hi() ? c.outgoing(n) : SparseIntMatrix(a, b);
    d.emplace(n, block_matrix(dam, SparseIntMatrix(a2, b), sparse_identity(a, qq), db));
  }
  return ChainComplex::make(Grading::Homological, lo, std::move(ranks), std::move(d))
      .with_valid_range(c.valid_lo(), c.valid_hi());
}

// Invariant factors of each differential, computed once per complex.
using FactorTable = std::map<int, std::vector<Integer>>;

template <class Kernel>
FactorTable factor_table(const ChainComplex &c, Kernel kernel) {
  std::vector<int> degs;
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (c.outgoing(n).rows() && c.outgoing(n).cols())
      degs.push_back(n);
  std::vector<std::vector<Integer>> res(degs.size());
  // degrees are independent; the largest matrices dominate so use dynamic scheduling
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < degs.size(); ++k)
    res[k] = kernel(c.outgoing(degs[k]));
  FactorTable t;
  for (std::size_t k = 0; k < degs.size(); ++k)
    t[degs[k]] = std::move(res[k]);
  return t;
}

FinAbGroup group_from_factors(const ChainComplex &c, const FactorTable &t, int n) {
  const int src = c.grading() == Grading::Homological ? n + 1 : n - 1;
  static const std::vector<Integer> none;
  auto in_it = t.find(src);
  auto out_it = t.find(n);
  const auto &in = in_it == t.end() ? none : in_it->second;
  const auto &out = out_it == t.end() ? none : out_it->second;
  const int free = c.rank(n) - static_cast<int>(in.size()) - static_cast<int>(out.size());
  if (free < 0)
    throw std::logic_error("negative Betti number; complex is not exact-shaped");
  return FinAbGroup::from_orders(std::span<const Integer>(in), free);
}

// Homology of C tensor Z/q from the integral invariant factors of a free complex:
// each factor d of either adjacent differential leaves a Z/gcd(d, q).
FinAbGroup reduced_group_from_factors(const ChainComplex &c, const FactorTable &t, int n, const Integer &q) {
  const int src = c.grading() == Grading::Homological ? n + 1 : n - 1;
  std::vector<Integer> orders;
  int used = 0;
  for (int deg : {src, n}) {
    auto it = t.find(deg);
    if (it == t.end())
      continue;
    for (const auto &d : it->second) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t());
      orders.push_back(g);
      ++used;
    }
  }
  const int free = c.rank(n) - used;
  if (free < 0)
    throw std::logic_error("negative Betti number; complex is not exact-shaped");
  orders.insert(orders.end(), free, q);
  return FinAbGroup::from_orders(std::span<const Integer>(orders));
}

std::vector<int> needed_sources(const ChainComplex &c, std::span<const int> degrees) {
  std::vector<int> s;
  for (int n : degrees) {
    s.push_back(n);
    s.push_back(c.grading() == Grading::Homological ? n + 1 : n - 1);
  }
  return s;
}

ChainComplex prepared(const ChainComplex &c, const Coefficients &coeffs) {
  if (coeffs.integral())
    return c;
  return coefficient_cone(c, coeffs.modulus);
}

} // namespace

ChainComplex coefficient_cone(const ChainComplex &c, const Integer &q) {
  if (c.grading() == Grading::Homological)
    return homological_cone(c, q);
  return homological_cone(c.regraded(), q).regraded();
}

std::vector<HomologyEntry> homology(const ChainComplex &c, std::span<const int> degrees, const Coefficients &coeffs) {
  const ChainComplex &w = c;
  // restrict the work to the differentials the requested degrees need
  auto srcs = needed_sources(w, degrees);
  std::sort(srcs.begin(), srcs.end());
  srcs.erase(std::unique(srcs.begin(), srcs.end()), srcs.end());
  std::erase_if(srcs, [&](int n) { return n < w.lo() || n > w.hi() || !w.outgoing(n).rows() || !w.outgoing(n).cols(); });
  std::vector<std::vector<Integer>> res(srcs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < srcs.size(); ++k)
    res[k] = invariant_factors(w.outgoing(srcs[k]));
  FactorTable t;
  for (std::size_t k = 0; k < srcs.size(); ++k)
    t[srcs[k]] = std::move(res[k]);

  std::vector<HomologyEntry> out;
  for (int n : degrees) {
    HomologyEntry e;
    e.degree = n;
    if (n < c.lo() || n > c.hi()) {
      e.status = DegreeStatus::OutOfRange;
    } else {
      e.group = coeffs.integral() ? group_from_factors(w, t, n)
                                  : reduced_group_from_factors(w, t, n, coeffs.modulus);
      e.status = c.degree_valid(n) ? DegreeStatus::Ok : DegreeStatus::Truncated;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::map<int, FinAbGroup> homology(const ChainComplex &c, const Coefficients &coeffs) {
  std::vector<int> degs;
  for (int n = c.lo(); n <= c.hi(); ++n)
    degs.push_back(n);
  std::map<int, FinAbGroup> r;
  for (auto &e : homology(c, degs, coeffs))
    r[e.degree] = std::move(e.group);
  return r;
}

FinAbGroup homology_at(const ChainComplex &c, int degree, const Coefficients &coeffs) {
  int d[1] = {degree};
  auto e = homology(c, d, coeffs);
  if (e[0].status == DegreeStatus::OutOfRange)
    throw std::out_of_range("homology degree outside the complex");
  return e[0].group;
}

std::map<int, FinAbGroup> homology_reference(const ChainComplex &c, const Coefficients &coeffs) {
  const ChainComplex w = prepared(c, coeffs);
  auto t = factor_table(w, [](const SparseIntMatrix &m) { return smith_invariant_factors(m.to_dense()); });
  std::map<int, FinAbGroup> r;
  for (int n = c.lo(); n <= c.hi(); ++n)
    r[n] = group_from_factors(w, t, n);
  return r;
}

} // namespace crys
