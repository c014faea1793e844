#include "crys/specseq/contraction.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "crys/specseq/e1_row.hpp"

namespace crys {

namespace {

// Block matrix (coeff(q, s) * I_rank) from n_src summands to n_dst summands.
template <class Coeff>
SparseIntMatrix block_scalar(int rank, int n_dst, int n_src, Coeff coeff) {
  SparseIntMatrix m(rank * n_dst, rank * n_src);
  for (int s = 1; s <= n_src; ++s)
    for (int b = 0; b < rank; ++b) {
      SparseIntMatrix::Column col;
      for (int q = 1; q <= n_dst; ++q)
        if (int c = coeff(q, s))
          col.push_back({static_cast<std::int32_t>((q - 1) * rank + b), c});
      m.set_column((s - 1) * rank + b, std::move(col));
    }
  return m;
}

// coefficient of v_s in position q of d_n (positions 1..n+1)
int differential_coeff(int n, int q, int s) {
  if (n % 2 == 0) {
    if (q == 1)
      return s == 1 ? -1 : 0;
    if (q % 2 == 0)
      return 0;
    if (s == q - 1)
      return 1;
    return s == q ? -1 : 0;
  }
  if (q == 1)
    return 0;
  const int src = q % 2 == 0 ? q : q - 1;
  return s == src ? 1 : 0;
}

// coefficient of v_s in position q of h_i (positions 1..i-1)
int homotopy_coeff(int i, int q, int s) {
  if (i <= 2)
    return 0;
  if (i % 2 == 1) {
    if (q == i - 1)
      return s == i ? 1 : 0;
    return q % 2 == 1 && q <= i - 2 && s == q ? -1 : 0;
  }
  return q % 2 == 0 && q <= i - 2 && s == q ? 1 : 0;
}

} // namespace

ChainComplex hom_complex(int rank, int bound) {
  if (rank < 1 || bound < 0)
    throw std::invalid_argument("hom_complex needs rank >= 1, bound >= 0");
  const int top = bound + 1;
  std::vector<int> ranks(top + 1);
  for (int n = 0; n <= top; ++n)
    ranks[n] = rank * n;
  std::map<int, SparseIntMatrix> diffs;
  for (int n = 0; n < top; ++n)
    diffs.emplace(n, block_scalar(rank, n + 1, n, [n](int q, int s) { return differential_coeff(n, q, s); }));
  return ChainComplex::make(Grading::Cohomological, 0, std::move(ranks), std::move(diffs))
      .with_valid_range(0, bound);
}

ChainMap hom_contraction(int rank, int bound) {
  ChainMap h;
  for (int i = 1; i <= bound + 1; ++i)
    h.emplace(i, block_scalar(rank, i - 1, i, [i](int q, int s) { return homotopy_coeff(i, q, s); }).to_dense());
  return h;
}

ChainMap hom_projection(int rank) { return {{1, IntMatrix::identity(rank)}}; }

ContractionReport hom_complex_and_contraction(int rank, int bound, const Integer &modulus) {
  ContractionReport rep;
  ChainComplex closed;
  try {
    closed = hom_complex(rank, bound);
    rep.square_zero = true;
  } catch (const std::invalid_argument &e) {
    rep.message = e.what();
    return rep;
  }
  const auto derived = e1_row(rank, 1, bound);
  for (int n = 0; n <= bound; ++n)
    if (!(closed.outgoing(n) == derived.outgoing(n)))
      rep.mismatched_degrees.push_back(n);
  rep.matches_cofaces = rep.mismatched_degrees.empty();
  rep.first_differential_zero = closed.outgoing(1).is_zero();

  ChainMap id;
  for (int n = 0; n <= bound + 1; ++n)
    id.emplace(n, IntMatrix::identity(closed.rank(n)));
  rep.homotopy = verify_homotopy(closed, id, hom_projection(rank), hom_contraction(rank, bound), modulus);

  rep.pass = rep.matches_cofaces && rep.square_zero && rep.first_differential_zero && rep.homotopy.pass;
  if (!rep.matches_cofaces) {
    std::string list;
    for (int n : rep.mismatched_degrees)
      list += (list.empty() ? "" : ", ") + std::to_string(n);
    rep.message = fmt::format("closed-form differential differs from the coface sum in degrees {}", list);
  } else if (!rep.first_differential_zero) {
    rep.message = "first differential is nonzero";
  } else if (!rep.homotopy.pass) {
    rep.message = rep.homotopy.message;
  } else {
    rep.message = fmt::format("rank {}, degrees 0..{}: all identities hold", rank, bound);
  }
  return rep;
}

} // namespace crys
