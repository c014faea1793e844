#include "crys/barstack/simplicial.hpp"

#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "crys/errors.hpp"

namespace crys {

namespace {

std::uint64_t product(const std::vector<int> &r) {
  std::uint64_t s = 1;
  for (int x : r)
    s *= static_cast<std::uint64_t>(x);
  return s;
}

} // namespace

std::uint64_t SimplicialGroup::size(int n) const { return product(radices.at(n)); }

std::uint32_t SimplicialGroup::add(int n, std::uint32_t a, std::uint32_t b) const {
  std::uint32_t code = 0, w = 1;
  for (int r : radices[n]) {
    code += ((a % r + b % r) % r) * w;
    a /= r;
    b /= r;
    w *= r;
  }
  return code;
}

SimplicialGroup SimplicialGroup::constant(const FinAbGroup &g, int top) {
  if (!g.is_finite())
    throw std::invalid_argument("constant simplicial group needs a finite group");
  std::vector<int> r;
  for (const auto &d : g.torsion()) {
    if (!d.fits_sint_p() || d > 1 << 15)
      throw BudgetExceeded("group too large");
    r.push_back(static_cast<int>(d.get_si()));
  }
  SimplicialGroup s;
  s.radices.assign(top + 1, r);
  const auto sz = product(r);
  s.faces.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    s.faces[n].assign(n + 1, std::vector<std::uint32_t>(sz));
    for (int i = 0; i <= n; ++i)
      for (std::uint32_t x = 0; x < sz; ++x)
        s.faces[n][i][x] = x;
  }
  return s;
}

std::optional<std::string> SimplicialGroup::check_identities() const {
  for (int n = 2; n <= top(); ++n) {
    const auto sz = size(n);
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (std::uint32_t x = 0; x < sz; ++x) {
          auto lhs = faces[n - 1][i][faces[n][j][x]];
          auto rhs = faces[n - 1][j - 1][faces[n][i][x]];
          if (lhs != rhs)
            return fmt::format("d_{} d_{} != d_{} d_{} at level {}, element {}", i, j, j - 1, i, n, x);
        }
  }
  return std::nullopt;
}

ChainComplex SimplicialGroup::chains() const {
  std::vector<int> ranks;
  for (int n = 0; n <= top(); ++n) {
    const auto sz = size(n);
    if (sz > static_cast<std::uint64_t>(INT32_MAX))
      throw BudgetExceeded("level too large for a chain complex");
    ranks.push_back(static_cast<int>(sz));
  }
  std::map<int, SparseIntMatrix> d;
  for (int n = 1; n <= top(); ++n) {
    SparseIntMatrix m(ranks[n - 1], ranks[n]);
    std::vector<SparseIntMatrix::Column> cols(ranks[n]);
#pragma omp parallel for schedule(static)
    for (int x = 0; x < ranks[n]; ++x)
      for (int i = 0; i <= n; ++i)
        cols[x].push_back({static_cast<std::int32_t>(faces[n][i][x]), i % 2 ? -1 : 1});
    for (int x = 0; x < ranks[n]; ++x)
      m.set_column(x, std::move(cols[x]));
    d.emplace(n, std::move(m));
  }
  return ChainComplex::make(Grading::Homological, 0, std::move(ranks), std::move(d));
}

SimplicialGroup classifying(const SimplicialGroup &b, int top, std::uint64_t budget) {
  const int T = std::min(b.top() + 1, top);
  SimplicialGroup w;
  w.radices.resize(T + 1);
  // level n: components b_{n-1}, ..., b_0; b_0 is least significant
  std::vector<std::vector<std::uint64_t>> weight(T + 1);
  for (int n = 0; n <= T; ++n) {
    std::uint64_t acc = 1;
    for (int k = 0; k < n; ++k) {
      weight[n].push_back(acc);
      acc *= b.size(k);
      if (acc > budget)
        throw BudgetExceeded(fmt::format("classifying level {} has more than {} elements", n, budget));
      w.radices[n].insert(w.radices[n].end(), b.radices[k].begin(), b.radices[k].end());
    }
  }
  w.faces.resize(T + 1);
  for (int n = 1; n <= T; ++n) {
    const std::uint64_t sz = w.size(n);
    w.faces[n].assign(n + 1, std::vector<std::uint32_t>(sz));
#pragma omp parallel for schedule(static)
    for (std::int64_t xx = 0; xx < static_cast<std::int64_t>(sz); ++xx) {
      const auto x = static_cast<std::uint64_t>(xx);
      std::vector<std::uint32_t> comp(n);
      for (int k = 0; k < n; ++k)
        comp[k] = static_cast<std::uint32_t>((x / weight[n][k]) % b.size(k));
      for (int i = 0; i <= n; ++i) {
        std::uint64_t code = 0;
        for (int k = 0; k <= n - 2; ++k) {
          std::uint32_t c;
          if (k >= n - i)
            c = b.faces[k + 1][i - n + 1 + k][comp[k + 1]];
          else if (k == n - 1 - i)
            c = b.add(k, b.faces[k + 1][0][comp[k + 1]], comp[k]);
          else
            c = comp[k];
          code += c * weight[n - 1][k];
        }
        w.faces[n][i][x] = static_cast<std::uint32_t>(code);
      }
    }
  }
  return w;
}

KanModel kan_classifying(const FinAbGroup &g, int iterations, int bound, std::uint64_t budget) {
  if (iterations < 1)
    throw std::invalid_argument("K(G, n) needs n >= 1");
  if (bound < 0)
    throw std::invalid_argument("bound must be >= 0");
  const int T = bound + 1;
  SimplicialGroup s = SimplicialGroup::constant(g, T);
  for (int it = 0; it < iterations; ++it)
    s = classifying(s, T, budget);
  if (s.top() < T)
    throw std::logic_error("classifying construction lost levels");
  if (auto err = s.check_identities())
    throw std::logic_error("simplicial identities fail: " + *err);
  KanModel m;
  m.complex = s.chains().with_valid_range(0, bound);
  m.verified_through = iterations == 1 ? bound : std::min(bound, iterations + 1);
  return m;
}

} // namespace crys
