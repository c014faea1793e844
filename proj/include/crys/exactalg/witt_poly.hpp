#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "crys/exactalg/finite_field.hpp"

namespace crys {

/// Sparse multivariate polynomial with integer coefficients.
class IntPoly {
public:
  using Monomial = std::vector<std::uint32_t>;

  explicit IntPoly(int num_vars = 0) : nvars_(num_vars) {}
  static IntPoly variable(int num_vars, int index);
  static IntPoly constant(int num_vars, const Integer &c);

  int num_vars() const { return nvars_; }
  const std::map<Monomial, Integer> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  IntPoly &operator+=(const IntPoly &o);
  IntPoly &operator-=(const IntPoly &o);
  IntPoly operator*(const IntPoly &o) const;
  IntPoly scaled(const Integer &c) const;
  IntPoly pow(unsigned e) const;
  /// Exact division by c; returns false (leaving *this untouched) if some
  /// coefficient is not divisible.
  bool divide_exact(const Integer &c);

  Integer evaluate(std::span<const Integer> values) const;

private:
  void add_term(const Monomial &m, const Integer &c);

  int nvars_;
  std::map<Monomial, Integer> terms_;
};

/// Universal Witt addition and multiplication polynomials for W_N over a ring
/// of characteristic p, in variables X_0..X_{N-1}, Y_0..Y_{N-1}.
struct WittPolynomials {
  struct Term {
    std::uint16_t coeff; // reduced mod p, nonzero
    std::vector<std::pair<std::uint16_t, std::uint32_t>> powers; // (variable, exponent)
  };

  int p = 0;
  int length = 0;
  std::vector<IntPoly> sum;     // integral forms, one per coordinate
  std::vector<IntPoly> product; // integral forms, one per coordinate
  std::vector<std::vector<Term>> sum_mod_p;
  std::vector<std::vector<Term>> product_mod_p;
  std::uint32_t max_exponent = 1;
};

/// Solves the ghost equations over Q for (p, N), checks integrality and
/// caches the result. Safe to call concurrently; each (p, N) is built once.
const WittPolynomials &witt_polynomials(int p, int length);

/// w_n = sum_{i<=n} p^i x_i^{p^{n-i}}.
std::vector<Integer> ghost_components(std::span<const Integer> x, int p);

} // namespace crys
