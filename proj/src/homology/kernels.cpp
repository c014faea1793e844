#include "crys/homology/kernels.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace crys {

namespace {

using Entry = SparseIntMatrix::Entry;
using Column = SparseIntMatrix::Column;

// dst - f * src, merged by row. Returns false on machine-word overflow.
bool axpy_merge(const Column &dst, const Column &src, std::int64_t f, Column &out, std::vector<int> &fill) {
  out.clear();
  fill.clear();
  out.reserve(dst.size() + src.size());
  std::size_t a = 0, b = 0;
  while (a < dst.size() || b < src.size()) {
    if (b == src.size() || (a < dst.size() && dst[a].row < src[b].row)) {
      out.push_back(dst[a++]);
      continue;
    }
    std::int64_t prod;
    if (__builtin_mul_overflow(f, src[b].value, &prod))
      return false;
    if (a < dst.size() && dst[a].row == src[b].row) {
      std::int64_t v;
      if (__builtin_sub_overflow(dst[a].value, prod, &v))
        return false;
      if (v != 0)
        out.push_back({dst[a].row, v});
      ++a;
    } else {
      if (prod == INT64_MIN)
        return false;
      out.push_back({src[b].row, -prod});
      fill.push_back(src[b].row);
    }
    ++b;
  }
  return true;
}

} // namespace

std::vector<Integer> dense_invariant_factors(IntMatrix A) {
  const int R = A.rows(), C = A.cols();
  std::vector<Integer> out;
  const int lim = std::min(R, C);
  for (int t = 0; t < lim; ++t) {
    int bi = -1, bj = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (A(i, j) != 0 && (bi < 0 || cmp_abs(A(i, j), A(bi, bj)) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi < 0)
      break;
    A.swap_rows(t, bi);
    A.swap_cols(t, bj);
    for (;;) {
      const Integer piv = A(t, t);
      int dirty = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(| : dirty)
      for (int i = t + 1; i < R; ++i) {
        if (A(i, t) == 0)
          continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), piv.get_mpz_t());
        for (int j = t; j < C; ++j)
          if (A(t, j) != 0)
            A(i, j) -= q * A(t, j);
        if (A(i, t) != 0)
          dirty = 1;
      }
      // columns: only row t matters for the invariant factors once column t is
      // clear, so column operations touch row t alone
      if (!dirty) {
        for (int j = t + 1; j < C; ++j) {
          if (A(t, j) == 0)
            continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), piv.get_mpz_t());
          A(t, j) -= q * piv;
          if (A(t, j) != 0)
            dirty = 1;
        }
      }
      if (dirty) {
        int bi2 = t, bj2 = t;
        for (int i = t + 1; i < R; ++i)
          if (A(i, t) != 0 && cmp_abs(A(i, t), A(bi2, bj2)) < 0) {
            bi2 = i;
            bj2 = t;
          }
        for (int j = t + 1; j < C; ++j)
          if (A(t, j) != 0 && cmp_abs(A(t, j), A(bi2, bj2)) < 0) {
            bi2 = t;
            bj2 = j;
          }
        if (bj2 != t) {
          // column t must carry the smaller remainder; full column swap is needed
          // because rows below t may hold entries in column bj2
          A.swap_cols(t, bj2);
        }
        A.swap_rows(t, bi2);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < R && bad < 0; ++i)
        for (int j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), piv.get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0)
        break;
      A.add_row_multiple(t, bad, 1);
    }
    out.push_back(abs(A(t, t)));
  }
  return out;
}

std::vector<Integer> invariant_factors(const SparseIntMatrix &m, EliminationStats *stats) {
  const int R = m.rows(), C = m.cols();
  std::vector<Column> cols(C);
  std::vector<std::vector<int>> rowcols(R);
  std::vector<char> col_alive(C, 1);
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int j = 0; j < C; ++j) {
    cols[j] = m.column(j);
    for (const auto &e : cols[j])
      rowcols[e.row].push_back(j);
    heap.push({cols[j].size(), j});
  }

  EliminationStats st;
  std::vector<int> targets;
  std::vector<std::int64_t> factors;
  std::vector<Column> updated;
  std::vector<std::vector<int>> fills;
  bool overflow = false;

  while (!heap.empty() && !overflow) {
    auto [len, c] = heap.top();
    heap.pop();
    if (!col_alive[c] || cols[c].size() != len)
      continue;
    if (len == 0) {
      col_alive[c] = 0;
      continue;
    }
    int r = -1;
    std::int64_t u = 0;
    std::size_t best = 0;
    for (const auto &e : cols[c])
      if ((e.value == 1 || e.value == -1) && (r < 0 || rowcols[e.row].size() < best)) {
        r = e.row;
        u = e.value;
        best = rowcols[e.row].size();
      }
    if (r < 0)
      continue; // parked until the column changes

    targets.clear();
    factors.clear();
    auto &rc = rowcols[r];
    std::sort(rc.begin(), rc.end());
    rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
    for (int c2 : rc) {
      if (c2 == c || !col_alive[c2])
        continue;
      const auto &col = cols[c2];
      auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry &e, int row) { return e.row < row; });
      if (it == col.end() || it->row != r)
        continue;
      targets.push_back(c2);
      factors.push_back(it->value * u);
    }

    const int T = static_cast<int>(targets.size());
    updated.assign(T, {});
    fills.assign(T, {});
    int bad = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(| : bad)
    for (int k = 0; k < T; ++k)
      if (!axpy_merge(cols[targets[k]], cols[c], factors[k], updated[k], fills[k]))
        bad = 1;
    if (bad) {
      overflow = true;
      break;
    }
    for (int k = 0; k < T; ++k) {
      const int c2 = targets[k];
      cols[c2].swap(updated[k]);
      for (int fr : fills[k])
        rowcols[fr].push_back(c2);
      heap.push({cols[c2].size(), c2});
    }
    col_alive[c] = 0;
    std::vector<int>().swap(rowcols[r]);
    Column().swap(cols[c]);
    ++st.unit_pivots;
  }

  // residual block
  std::vector<int> live_cols, row_index(R, -1);
  int nrows = 0;
  for (int j = 0; j < C; ++j) {
    if (!col_alive[j] || cols[j].empty())
      continue;
    live_cols.push_back(j);
    for (const auto &e : cols[j])
      if (row_index[e.row] < 0)
        row_index[e.row] = nrows++;
  }
  IntMatrix dense(nrows, static_cast<int>(live_cols.size()));
  for (std::size_t k = 0; k < live_cols.size(); ++k)
    for (const auto &e : cols[live_cols[k]])
      dense(row_index[e.row], static_cast<int>(k)) = static_cast<long>(e.value);
  st.residual_rows = nrows;
  st.residual_cols = static_cast<int>(live_cols.size());
  st.overflowed = overflow;
  if (stats)
    *stats = st;

  std::vector<Integer> out(st.unit_pivots, Integer(1));
  for (auto &d : dense_invariant_factors(std::move(dense)))
    out.push_back(std::move(d));
  return out;
}

} // namespace crys
