#include "crys/specseq/cosimplicial.hpp"

#include <cstdint>

#include <fmt/format.h>

#include "crys/barstack/bar.hpp"
#include "crys/errors.hpp"
#include "crys/specseq/multilinear.hpp"

namespace crys {

CosimplicialIdentityError::CosimplicialIdentityError(int level_, int k_, int l_)
    : std::invalid_argument(fmt::format(
          "cosimplicial identity fails into level {}: delta^{} delta^{} != delta^{} delta^{}", level_, l_, k_, k_,
          l_ - 1)),
      level(level_), k(k_), l(l_) {}

CosimplicialModule::CosimplicialModule(std::vector<int> ranks, std::vector<std::vector<SparseIntMatrix>> cofaces)
    : ranks_(std::move(ranks)), cofaces_(std::move(cofaces)) {
  if (ranks_.empty())
    throw std::invalid_argument("cosimplicial module needs level 0");
  if (cofaces_.size() != ranks_.size() || !cofaces_[0].empty())
    throw std::invalid_argument("cofaces must be given for levels 1..top");
  for (int i = 1; i <= top(); ++i) {
    if (static_cast<int>(cofaces_[i].size()) != i + 1)
      throw std::invalid_argument(fmt::format("level {} needs {} cofaces", i, i + 1));
    for (const auto &m : cofaces_[i])
      if (m.rows() != ranks_[i] || m.cols() != ranks_[i - 1])
        throw std::invalid_argument(fmt::format("coface into level {} has the wrong shape", i));
  }
  for (int i = 2; i <= top(); ++i)
    for (int l = 1; l <= i; ++l)
      for (int k = 0; k < l; ++k)
        if (!(cofaces_[i][l] * cofaces_[i - 1][k] == cofaces_[i][k] * cofaces_[i - 1][l - 1]))
          throw CosimplicialIdentityError(i, k, l);
}

CosimplicialModule CosimplicialModule::constant(int top) {
  std::vector<std::vector<SparseIntMatrix>> cof(top + 1);
  for (int i = 1; i <= top; ++i)
    cof[i].assign(i + 1, sparse_identity(1));
  return CosimplicialModule(std::vector<int>(top + 1, 1), std::move(cof));
}

CosimplicialModule CosimplicialModule::primitive(int rank, int top) {
  std::vector<int> ranks(top + 1);
  for (int i = 0; i <= top; ++i)
    ranks[i] = rank * i;
  std::vector<std::vector<SparseIntMatrix>> cof(top + 1);
  for (int i = 1; i <= top; ++i) {
    for (int k = 0; k <= i; ++k) {
      // summand s of the source (0-based) lands in the summands listed here
      SparseIntMatrix m(ranks[i], ranks[i - 1]);
      for (int s = 0; s < i - 1; ++s) {
        std::vector<int> dst;
        if (s + 1 < k)
          dst = {s};
        else if (s + 1 == k)
          dst = {s, s + 1};
        else
          dst = {s + 1};
        for (int b = 0; b < rank; ++b) {
          SparseIntMatrix::Column col;
          for (int t : dst)
            col.push_back({static_cast<std::int32_t>(t * rank + b), 1});
          m.set_column(s * rank + b, std::move(col));
        }
      }
      cof[i].push_back(std::move(m));
    }
  }
  return CosimplicialModule(std::move(ranks), std::move(cof));
}

CosimplicialModule CosimplicialModule::exterior_power(const CosimplicialModule &c, int j) {
  std::vector<int> ranks(c.top() + 1);
  for (int i = 0; i <= c.top(); ++i) {
    const auto r = binomial(c.rank(i), j);
    if (r > INT32_MAX)
      throw BudgetExceeded(fmt::format("exterior power of rank {} too large", c.rank(i)));
    ranks[i] = static_cast<int>(r);
  }
  std::vector<std::vector<SparseIntMatrix>> cof(c.top() + 1);
  for (int i = 1; i <= c.top(); ++i)
    for (int k = 0; k <= i; ++k)
      cof[i].push_back(crys::exterior_power(c.coface(i, k), j));
  return CosimplicialModule(std::move(ranks), std::move(cof));
}

CosimplicialModule CosimplicialModule::group_cochains(const FinAbGroup &g, int top) {
  const GroupElements el(g);
  const std::int64_t base = el.size();
  std::vector<int> ranks(top + 1);
  std::int64_t r = 1;
  for (int i = 0; i <= top; ++i) {
    if (r > (std::int64_t{1} << 22))
      throw BudgetExceeded(fmt::format("|G|^{} cochains exceed the budget", i));
    ranks[i] = static_cast<int>(r);
    r *= base;
  }
  std::vector<std::vector<SparseIntMatrix>> cof(top + 1);
  for (int n = 1; n <= top; ++n) {
    // face d_k : G^n -> G^(n-1), as a matrix, then transposed
    std::vector<SparseIntMatrix> faces(n + 1, SparseIntMatrix(ranks[n - 1], ranks[n]));
    std::vector<int> t(n), u;
    for (int x = 0; x < ranks[n]; ++x) {
      int y = x;
      for (int k = n - 1; k >= 0; --k) {
        t[k] = static_cast<int>(y % base);
        y /= static_cast<int>(base);
      }
      auto encode = [&](const std::vector<int> &v) {
        std::int64_t c = 0;
        for (int e : v)
          c = c * base + e;
        return static_cast<std::int32_t>(c);
      };
      for (int k = 0; k <= n; ++k) {
        u = t;
        if (k == 0) {
          u.erase(u.begin());
        } else if (k == n) {
          u.pop_back();
        } else {
          u[k - 1] = el.add(t[k - 1], t[k]);
          u.erase(u.begin() + k);
        }
        faces[k].set_column(x, {{encode(u), 1}});
      }
    }
    for (auto &f : faces)
      cof[n].push_back(f.transpose());
  }
  return CosimplicialModule(std::move(ranks), std::move(cof));
}

ChainComplex alternating_face_complex(const CosimplicialModule &c) {
  std::vector<int> ranks(c.top() + 1);
  for (int i = 0; i <= c.top(); ++i)
    ranks[i] = c.rank(i);
  std::map<int, SparseIntMatrix> diffs;
  for (int i = 0; i < c.top(); ++i) {
    SparseIntMatrix d(c.rank(i + 1), c.rank(i));
    for (int col = 0; col < c.rank(i); ++col) {
      SparseIntMatrix::Column acc;
      for (int k = 0; k <= i + 1; ++k)
        for (const auto &e : c.coface(i + 1, k).column(col))
          acc.push_back({e.row, k % 2 ? -e.value : e.value});
      d.set_column(col, std::move(acc));
    }
    diffs.emplace(i, std::move(d));
  }
  const int top = c.top();
  return ChainComplex::make(Grading::Cohomological, 0, std::move(ranks), std::move(diffs))
      .with_valid_range(0, std::max(0, top - 1));
}

} // namespace crys
