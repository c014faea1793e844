#include "crys/homology/smith.hpp"

#include <algorithm>

namespace crys {

namespace {

// Tracks the row and column operations applied to the working matrix and
// mirrors them onto U, V and their inverses when requested.
struct Reducer {
  IntMatrix A;
  bool track;
  IntMatrix U, V, Ui, Vi;

  Reducer(const IntMatrix &m, bool track_transforms) : A(m), track(track_transforms) {
    if (track) {
      U = IntMatrix::identity(m.rows());
      Ui = U;
      V = IntMatrix::identity(m.cols());
      Vi = V;
    }
  }

  void swap_rows(int a, int b) {
    if (a == b)
      return;
    A.swap_rows(a, b);
    if (track) {
      U.swap_rows(a, b);
      Ui.swap_cols(a, b);
    }
  }
  void swap_cols(int a, int b) {
    if (a == b)
      return;
    A.swap_cols(a, b);
    if (track) {
      V.swap_cols(a, b);
      Vi.swap_rows(a, b);
    }
  }
  // row[dst] += c * row[src]
  void add_row(int dst, int src, const Integer &c) {
    A.add_row_multiple(dst, src, c);
    if (track) {
      U.add_row_multiple(dst, src, c);
      Ui.add_col_multiple(src, dst, -c);
    }
  }
  // col[dst] += c * col[src]
  void add_col(int dst, int src, const Integer &c) {
    A.add_col_multiple(dst, src, c);
    if (track) {
      V.add_col_multiple(dst, src, c);
      Vi.add_row_multiple(src, dst, -c);
    }
  }
  void negate_row(int i) {
    A.negate_row(i);
    if (track) {
      U.negate_row(i);
      Ui.negate_col(i);
    }
  }

  // Moves the nonzero entry of least |value| in the block [t:, t:] to (t, t).
  bool bring_min_pivot(int t) {
    int bi = -1, bj = -1;
    Integer best;
    for (int i = t; i < A.rows(); ++i)
      for (int j = t; j < A.cols(); ++j) {
        const Integer &x = A(i, j);
        if (x == 0)
          continue;
        if (bi < 0 || cmp_abs(x, best) < 0) {
          bi = i;
          bj = j;
          best = x;
          if (best == 1 || best == -1)
            goto found;
        }
      }
    if (bi < 0)
      return false;
  found:
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void run() {
    const int lim = std::min(A.rows(), A.cols());
    Integer q;
    for (int t = 0; t < lim; ++t) {
      if (!bring_min_pivot(t))
        break;
      for (;;) {
        bool dirty = false;
        for (int i = t + 1; i < A.rows(); ++i) {
          if (A(i, t) == 0)
            continue;
          mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (A(i, t) != 0)
            dirty = true;
        }
        for (int j = t + 1; j < A.cols(); ++j) {
          if (A(t, j) == 0)
            continue;
          mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (A(t, j) != 0)
            dirty = true;
        }
        if (dirty) {
          // a remainder smaller than the pivot survived; re-pivot in row/column t
          int bi = t, bj = t;
          for (int i = t + 1; i < A.rows(); ++i)
            if (A(i, t) != 0 && cmp_abs(A(i, t), A(bi, bj)) < 0) {
              bi = i;
              bj = t;
            }
          for (int j = t + 1; j < A.cols(); ++j)
            if (A(t, j) != 0 && cmp_abs(A(t, j), A(bi, bj)) < 0) {
              bi = t;
              bj = j;
            }
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        // row and column are clear; enforce divisibility of the rest by the pivot
        int bad = -1;
        for (int i = t + 1; i < A.rows() && bad < 0; ++i)
          for (int j = t + 1; j < A.cols(); ++j)
            if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad < 0)
          break;
        add_row(t, bad, 1);
      }
      if (A(t, t) < 0)
        negate_row(t);
    }
  }
};

} // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (int i = 0; i < rank; ++i)
    out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix &m) {
  Reducer r(m, true);
  r.run();
  SmithForm s;
  s.D = std::move(r.A);
  s.U = std::move(r.U);
  s.V = std::move(r.V);
  s.U_inv = std::move(r.Ui);
  s.V_inv = std::move(r.Vi);
  const int lim = std::min(s.D.rows(), s.D.cols());
  while (s.rank < lim && s.D(s.rank, s.rank) != 0)
    ++s.rank;
  return s;
}

std::vector<Integer> smith_invariant_factors(const IntMatrix &m) {
  Reducer r(m, false);
  r.run();
  std::vector<Integer> out;
  const int lim = std::min(r.A.rows(), r.A.cols());
  for (int i = 0; i < lim && r.A(i, i) != 0; ++i)
    out.push_back(r.A(i, i));
  return out;
}

} // namespace crys
