#include "crys/barstack/bar.hpp"

#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "crys/errors.hpp"

namespace crys {

GroupElements::GroupElements(const FinAbGroup &g) {
  if (!g.is_finite())
    throw std::invalid_argument("group must be finite");
  for (const auto &d : g.torsion()) {
    if (!d.fits_sint_p() || d > 1 << 15)
      throw BudgetExceeded("group order too large to enumerate");
    radices_.push_back(static_cast<int>(d.get_si()));
    size_ *= radices_.back();
    if (size_ > 1 << 15)
      throw BudgetExceeded("group order too large to enumerate");
  }
  add_.resize(static_cast<std::size_t>(size_) * size_);
  neg_.resize(size_);
  for (int a = 0; a < size_; ++a) {
    auto da = digits(a);
    for (int b = 0; b < size_; ++b) {
      auto db = digits(b);
      int code = 0, w = 1;
      for (std::size_t k = 0; k < radices_.size(); ++k) {
        code += ((da[k] + db[k]) % radices_[k]) * w;
        w *= radices_[k];
      }
      add_[static_cast<std::size_t>(a) * size_ + b] = code;
      if (code == 0)
        neg_[a] = b;
    }
  }
}

std::vector<int> GroupElements::digits(int a) const {
  std::vector<int> d(radices_.size());
  for (std::size_t k = 0; k < radices_.size(); ++k) {
    d[k] = a % radices_[k];
    a /= radices_[k];
  }
  return d;
}

ChainComplex bar_complex(const FinAbGroup &g, int bound, const BarOptions &opts) {
  if (bound < 0)
    throw std::invalid_argument("bar complex bound must be >= 0");
  GroupElements el(g);
  const int G = el.size();
  if (G > opts.max_group_order)
    throw BudgetExceeded(fmt::format("|G| = {} exceeds the cap {}", G, opts.max_group_order));
  if (bound > opts.max_degree)
    throw BudgetExceeded(fmt::format("degree bound {} exceeds the cap {}", bound, opts.max_degree));
  const int base = opts.normalized ? G - 1 : G;
  std::uint64_t top = 1;
  for (int n = 0; n < bound; ++n) {
    top *= static_cast<std::uint64_t>(base);
    if (top > opts.budget)
      throw BudgetExceeded(fmt::format("|G|^bound = {}^{} exceeds {} generators", base, bound, opts.budget));
  }
  std::vector<int> ranks(bound + 1);
  std::vector<std::int64_t> pw(bound + 2, 1);
  for (int n = 1; n <= bound + 1; ++n)
    pw[n] = pw[n - 1] * base;
  for (int n = 0; n <= bound; ++n)
    ranks[n] = static_cast<int>(pw[n]);

  // tuple entries are group codes; in the normalized complex digit k stands for code k + 1
  const int off = opts.normalized ? 1 : 0;
  std::map<int, SparseIntMatrix> diffs;
  for (int n = 2; n <= bound; ++n) {
    SparseIntMatrix d(ranks[n - 1], ranks[n]);
    std::vector<SparseIntMatrix::Column> cols(ranks[n]);
#pragma omp parallel for schedule(static)
    for (int x = 0; x < ranks[n]; ++x) {
      std::vector<int> t(n);
      int y = x;
      for (int k = n - 1; k >= 0; --k) {
        t[k] = y % base + off;
        y /= base;
      }
      auto encode = [&](const std::vector<int> &u) {
        std::int64_t c = 0;
        for (int v : u)
          c = c * base + (v - off);
        return static_cast<std::int32_t>(c);
      };
      std::vector<int> u;
      SparseIntMatrix::Column col;
      // d_0 drops the first entry, d_n the last
      u.assign(t.begin() + 1, t.end());
      col.push_back({encode(u), 1});
      for (int i = 1; i < n; ++i) {
        u.assign(t.begin(), t.end());
        int s = el.add(t[i - 1], t[i]);
        if (opts.normalized && s == 0)
          continue; // degenerate face
        u[i - 1] = s;
        u.erase(u.begin() + i);
        col.push_back({encode(u), i % 2 ? -1 : 1});
      }
      u.assign(t.begin(), t.end() - 1);
      col.push_back({encode(u), n % 2 ? -1 : 1});
      cols[x] = std::move(col);
    }
    for (int x = 0; x < ranks[n]; ++x)
      d.set_column(x, std::move(cols[x]));
    diffs.emplace(n, std::move(d));
  }
  // d_1 = d_0 - d_1 sends every 1-simplex to zero
  return ChainComplex::make(Grading::Homological, 0, std::move(ranks), std::move(diffs)).with_valid_range(0, bound - 1);
}

FinAbGroup exterior_square(const FinAbGroup &g) {
  if (!g.is_finite())
    throw std::invalid_argument("exterior_square expects a finite group");
  const auto &t = g.torsion();
  std::vector<Integer> v;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      v.push_back(gcd(t[i], t[j]));
  return FinAbGroup::from_orders(std::span<const Integer>(v));
}

} // namespace crys
