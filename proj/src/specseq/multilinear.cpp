#include "crys/specseq/multilinear.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>

namespace crys {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

namespace {

void tuples(int n, int j, int start, bool strict, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (static_cast<int>(cur.size()) == j) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x < n; ++x) {
    cur.push_back(x);
    tuples(n, j, strict ? x + 1 : x, strict, cur, out);
    cur.pop_back();
  }
}

// sign of the permutation sorting v, or 0 if v has a repeat; sorts v
int sort_with_sign(std::vector<int> &v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t k = i; k > 0 && v[k - 1] >= v[k]; --k) {
      if (v[k - 1] == v[k])
        return 0;
      std::swap(v[k - 1], v[k]);
      sign = -sign;
    }
  return sign;
}

} // namespace

std::vector<std::vector<int>> increasing_tuples(int n, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  tuples(n, j, 0, true, cur, out);
  return out;
}

std::vector<std::vector<int>> nondecreasing_tuples(int n, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  tuples(n, j, 0, false, cur, out);
  return out;
}

std::int64_t increasing_rank(const std::vector<int> &s, int n) {
  const int j = static_cast<int>(s.size());
  std::int64_t r = 0;
  int prev = -1;
  for (int k = 0; k < j; ++k) {
    for (int x = prev + 1; x < s[k]; ++x)
      r += binomial(n - 1 - x, j - 1 - k);
    prev = s[k];
  }
  return r;
}

std::int64_t nondecreasing_rank(const std::vector<int> &s, int n) {
  // non-decreasing tuples of {0..n-1} biject with increasing tuples of {0..n+j-2} via s_k + k
  std::vector<int> t(s);
  for (std::size_t k = 0; k < t.size(); ++k)
    t[k] += static_cast<int>(k);
  return increasing_rank(t, n + static_cast<int>(s.size()) - 1);
}

SparseIntMatrix exterior_power(const SparseIntMatrix &m, int j) {
  if (j < 0)
    throw std::invalid_argument("negative exterior power");
  const int rows = m.rows(), cols = m.cols();
  const auto rdim = binomial(rows, j), cdim = binomial(cols, j);
  if (rdim > INT32_MAX || cdim > INT32_MAX)
    throw std::overflow_error("exterior power too large");
  SparseIntMatrix out(static_cast<int>(rdim), static_cast<int>(cdim));
  const auto subsets = increasing_tuples(cols, j);
  std::vector<SparseIntMatrix::Column> colv(subsets.size());
  std::atomic<bool> overflow{false};
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(subsets.size()); ++c) {
    const auto &S = subsets[c];
    std::map<std::int64_t, std::int64_t> acc;
    std::vector<int> pick(j);
    // expand the wedge of the columns indexed by S
    auto rec = [&](auto &&self, int k, std::int64_t coeff) -> void {
      if (k == j) {
        std::vector<int> t(pick);
        int sign = sort_with_sign(t);
        if (sign)
          acc[increasing_rank(t, rows)] += sign * coeff;
        return;
      }
      for (const auto &e : m.column(S[k])) {
        std::int64_t c2;
        if (__builtin_mul_overflow(coeff, e.value, &c2)) {
          overflow = true;
          return;
        }
        pick[k] = e.row;
        self(self, k + 1, c2);
      }
    };
    rec(rec, 0, 1);
    for (const auto &[r, v] : acc)
      if (v)
        colv[c].push_back({static_cast<std::int32_t>(r), v});
  }
  if (overflow)
    throw std::overflow_error("exterior power entry overflow");
  for (std::size_t c = 0; c < colv.size(); ++c)
    out.set_column(static_cast<int>(c), std::move(colv[c]));
  return out;
}

IntMatrix exterior_power(const IntMatrix &m, int j) {
  return exterior_power(SparseIntMatrix::from_dense(m), j).to_dense();
}

IntMatrix symmetric_power(const IntMatrix &m, int j) {
  if (j < 0)
    throw std::invalid_argument("negative symmetric power");
  const int rows = m.rows(), cols = m.cols();
  const auto src = nondecreasing_tuples(cols, j);
  IntMatrix out(static_cast<int>(binomial(rows + j - 1, j)), static_cast<int>(src.size()));
  std::vector<int> pick(j);
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto &S = src[c];
    auto rec = [&](auto &&self, int k, const Integer &coeff) -> void {
      if (k == j) {
        std::vector<int> t(pick);
        std::sort(t.begin(), t.end());
        out(static_cast<int>(nondecreasing_rank(t, rows)), static_cast<int>(c)) += coeff;
        return;
      }
      for (int r = 0; r < rows; ++r) {
        const Integer &x = m(r, S[k]);
        if (x == 0)
          continue;
        pick[k] = r;
        self(self, k + 1, coeff * x);
      }
    };
    rec(rec, 0, Integer(1));
  }
  return out;
}

IntMatrix symmetric_multiplication(int n, int a, int b) {
  const auto A = nondecreasing_tuples(n, a), B = nondecreasing_tuples(n, b);
  IntMatrix out(static_cast<int>(binomial(n + a + b - 1, a + b)), static_cast<int>(A.size() * B.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = 0; k < B.size(); ++k) {
      std::vector<int> t(A[i]);
      t.insert(t.end(), B[k].begin(), B[k].end());
      std::sort(t.begin(), t.end());
      out(static_cast<int>(nondecreasing_rank(t, n)), static_cast<int>(i * B.size() + k)) += 1;
    }
  return out;
}

} // namespace crys
