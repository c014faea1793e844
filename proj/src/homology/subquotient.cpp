#include "crys/homology/subquotient.hpp"

#include <numeric>
#include <stdexcept>

#include "crys/homology/smith.hpp"

namespace crys {

IntMatrix lattice_basis(const IntMatrix &gens) {
  if (gens.cols() == 0)
    return IntMatrix(gens.rows(), 0);
  auto s = smith_normal_form(gens);
  IntMatrix b(gens.rows(), s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < gens.rows(); ++i)
      b(i, j) = s.U_inv(i, j) * s.D(j, j);
  return b;
}

IntMatrix kernel_basis(const IntMatrix &a) {
  if (a.rows() == 0)
    return IntMatrix::identity(a.cols());
  auto s = smith_normal_form(a);
  std::vector<int> idx(a.cols() - s.rank);
  std::iota(idx.begin(), idx.end(), s.rank);
  return s.V.columns(idx);
}

IntMatrix preimage_basis(const IntMatrix &a, const IntMatrix &t) {
  const int n = a.cols();
  if (t.cols() == 0)
    return kernel_basis(a);
  IntMatrix k = kernel_basis(IntMatrix::hcat(a, t.scaled(-1)));
  std::vector<int> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return lattice_basis(k.rows_subset(rows));
}

IntMatrix intersection_basis(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("intersection of lattices in different ambients");
  IntMatrix ab = lattice_basis(a);
  IntMatrix y = preimage_basis(ab, b);
  return lattice_basis(ab * y);
}

std::optional<std::vector<Integer>> solve_in_lattice(const IntMatrix &b, std::span<const Integer> v) {
  if (static_cast<int>(v.size()) != b.rows())
    throw std::invalid_argument("solve_in_lattice: dimension mismatch");
  if (b.cols() == 0) {
    for (const auto &x : v)
      if (x != 0)
        return std::nullopt;
    return std::vector<Integer>{};
  }
  auto s = smith_normal_form(b);
  if (s.rank != b.cols())
    throw std::invalid_argument("solve_in_lattice: columns are dependent");
  auto z = s.U.apply(v);
  std::vector<Integer> w(b.cols());
  for (int i = 0; i < b.rows(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(z[i].get_mpz_t(), s.D(i, i).get_mpz_t()))
        return std::nullopt;
      w[i] = z[i] / s.D(i, i);
    } else if (z[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(w);
}

Subquotient::Subquotient(IntMatrix numerator_basis, const IntMatrix &denominator) : numerator_(std::move(numerator_basis)) {
  const int n = numerator_.rows(), k = numerator_.cols();
  if (denominator.rows() != n)
    throw std::invalid_argument("subquotient: ambient mismatch");
  // denominator generators in numerator coordinates
  IntMatrix x(k, denominator.cols());
  for (int j = 0; j < denominator.cols(); ++j) {
    auto y = solve_in_lattice(numerator_, denominator.column(j));
    if (!y)
      throw std::invalid_argument("subquotient: denominator not contained in numerator");
    for (int i = 0; i < k; ++i)
      x(i, j) = (*y)[i];
  }
  IntMatrix Pinv;
  int rank = 0;
  std::vector<Integer> diag;
  if (x.cols() == 0 || k == 0) {
    P_ = IntMatrix::identity(k);
    Pinv = P_;
  } else {
    auto s = smith_normal_form(x);
    P_ = s.U;
    Pinv = s.U_inv;
    rank = s.rank;
    diag = s.invariant_factors();
  }
  std::vector<Integer> tors;
  for (int i = 0; i < k; ++i) {
    if (i < rank) {
      if (diag[i] == 1)
        continue;
      kept_.push_back(i);
      orders_.push_back(diag[i]);
      tors.push_back(diag[i]);
    } else {
      kept_.push_back(i);
      orders_.push_back(0);
    }
  }
  group_ = FinAbGroup::from_orders(std::span<const Integer>(tors), k - rank);
  IntMatrix full = numerator_ * Pinv;
  generators_ = full.columns(kept_);
}

std::vector<Integer> Subquotient::coordinates(std::span<const Integer> v) const {
  auto y = solve_in_lattice(numerator_, v);
  if (!y)
    throw std::invalid_argument("vector is not in the subquotient numerator");
  auto z = P_.apply(*y);
  std::vector<Integer> out;
  for (std::size_t t = 0; t < kept_.size(); ++t) {
    Integer c = z[kept_[t]];
    if (orders_[t] != 0)
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), orders_[t].get_mpz_t());
    out.push_back(c);
  }
  return out;
}

bool Subquotient::contains(std::span<const Integer> v) const { return solve_in_lattice(numerator_, v).has_value(); }

bool Subquotient::is_trivial_class(std::span<const Integer> v) const {
  for (const auto &c : coordinates(v))
    if (c != 0)
      return false;
  return true;
}

IntMatrix induced_map(const Subquotient &src, const Subquotient &dst, const IntMatrix &f) {
  if (f.cols() != src.ambient_dim() || f.rows() != dst.ambient_dim())
    throw std::invalid_argument("induced_map: ambient shape mismatch");
  const int gs = src.generators().cols(), gd = dst.generators().cols();
  IntMatrix m(gd, gs);
  IntMatrix img = f * src.generators();
  for (int j = 0; j < gs; ++j) {
    auto c = dst.coordinates(img.column(j));
    for (int i = 0; i < gd; ++i)
      m(i, j) = c[i];
  }
  return m;
}

Subquotient homology_subquotient(const IntMatrix &incoming, const IntMatrix &outgoing, int dim,
                                 const Integer &modulus) {
  if (incoming.rows() != dim || outgoing.cols() != dim)
    throw std::invalid_argument("homology_subquotient: shape mismatch");
  IntMatrix num = modulus == 0 ? kernel_basis(outgoing)
                               : preimage_basis(outgoing, IntMatrix::scalar(outgoing.rows(), modulus));
  IntMatrix den = modulus == 0 ? incoming : IntMatrix::hcat(incoming, IntMatrix::scalar(dim, modulus));
  return Subquotient(std::move(num), den);
}

Subquotient homology_subquotient(const ChainComplex &c, int degree, const Integer &modulus) {
  return homology_subquotient(c.incoming(degree).to_dense(), c.outgoing(degree).to_dense(), c.rank(degree), modulus);
}

} // namespace crys
