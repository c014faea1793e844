#include "crys/exactalg/witt_poly.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

namespace crys {

IntPoly IntPoly::variable(int num_vars, int index) {
  IntPoly r(num_vars);
  Monomial m(num_vars, 0);
  m[index] = 1;
  r.terms_[m] = 1;
  return r;
}

IntPoly IntPoly::constant(int num_vars, const Integer &c) {
  IntPoly r(num_vars);
  if (c != 0)
    r.terms_[Monomial(num_vars, 0)] = c;
  return r;
}

void IntPoly::add_term(const Monomial &m, const Integer &c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  } else if (c == 0) {
    terms_.erase(it);
  }
}

IntPoly &IntPoly::operator+=(const IntPoly &o) {
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

IntPoly &IntPoly::operator-=(const IntPoly &o) {
  for (const auto &[m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

IntPoly IntPoly::operator*(const IntPoly &o) const {
  IntPoly r(nvars_);
  Monomial m(nvars_);
  for (const auto &[ma, ca] : terms_)
    for (const auto &[mb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i)
        m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

IntPoly IntPoly::scaled(const Integer &c) const {
  IntPoly r(nvars_);
  if (c == 0)
    return r;
  for (const auto &[m, a] : terms_)
    r.terms_[m] = a * c;
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = constant(nvars_, 1);
  IntPoly base = *this;
  while (e) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

bool IntPoly::divide_exact(const Integer &c) {
  for (const auto &[m, a] : terms_)
    if (!mpz_divisible_p(a.get_mpz_t(), c.get_mpz_t()))
      return false;
  for (auto &[m, a] : terms_)
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return true;
}

Integer IntPoly::evaluate(std::span<const Integer> values) const {
  if (static_cast<int>(values.size()) != nvars_)
    throw std::invalid_argument("IntPoly::evaluate: wrong number of values");
  Integer total = 0, term, pw;
  for (const auto &[m, c] : terms_) {
    term = c;
    for (int i = 0; i < nvars_; ++i)
      if (m[i]) {
        mpz_pow_ui(pw.get_mpz_t(), values[i].get_mpz_t(), m[i]);
        term *= pw;
      }
    total += term;
  }
  return total;
}

std::vector<Integer> ghost_components(std::span<const Integer> x, int p) {
  if (!is_prime(p))
    throw std::invalid_argument(fmt::format("ghost: p = {} is not prime", p));
  const int n = static_cast<int>(x.size());
  std::vector<Integer> w(n);
  Integer pw, pp;
  for (int k = 0; k < n; ++k) {
    w[k] = 0;
    for (int i = 0; i <= k; ++i) {
      // p^i * x_i^{p^{k-i}}
      Integer e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, k - i);
      mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), e.get_ui());
      mpz_ui_pow_ui(pp.get_mpz_t(), p, i);
      w[k] += pp * pw;
    }
  }
  return w;
}

namespace {

std::vector<WittPolynomials::Term> reduce_mod_p(const IntPoly &poly, int p, std::uint32_t &max_exp) {
  std::vector<WittPolynomials::Term> out;
  Integer r;
  for (const auto &[m, c] : poly.terms()) {
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    if (r == 0)
      continue;
    WittPolynomials::Term t;
    t.coeff = static_cast<std::uint16_t>(r.get_ui());
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) {
        t.powers.emplace_back(static_cast<std::uint16_t>(v), m[v]);
        max_exp = std::max(max_exp, m[v]);
      }
    out.push_back(std::move(t));
  }
  return out;
}

// Solve  sum_{i<=n} p^i R_i^{p^{n-i}} = rhs_n  for R_n, given R_0..R_{n-1}.
// `powers[i][k]` caches R_i^{p^k}.
void solve_ghost_level(int n, int p, const IntPoly &rhs, std::vector<IntPoly> &out,
                       std::vector<std::vector<IntPoly>> &powers) {
  IntPoly acc = rhs;
  Integer pi = 1;
  for (int i = 0; i < n; ++i) {
    auto &cache = powers[i];
    while (static_cast<int>(cache.size()) <= n - i)
      cache.push_back(cache.back().pow(p));
    acc -= cache[n - i].scaled(pi);
    pi *= p;
  }
  if (!acc.divide_exact(pi))
    throw std::logic_error(fmt::format("Witt polynomial of index {} is not integral (p={})", n, p));
  out.push_back(acc);
  powers.push_back({acc});
}

std::unique_ptr<WittPolynomials> build(int p, int N) {
  auto wp = std::make_unique<WittPolynomials>();
  wp->p = p;
  wp->length = N;
  const int nv = 2 * N;
  std::vector<IntPoly> X, Y;
  for (int i = 0; i < N; ++i) {
    X.push_back(IntPoly::variable(nv, i));
    Y.push_back(IntPoly::variable(nv, N + i));
  }
  // ghost polynomials of X and Y
  auto ghost = [&](const std::vector<IntPoly> &v, int n) {
    IntPoly g(nv);
    Integer pi = 1;
    for (int i = 0; i <= n; ++i) {
      Integer e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, n - i);
      g += v[i].pow(static_cast<unsigned>(e.get_ui())).scaled(pi);
      pi *= p;
    }
    return g;
  };

  std::vector<std::vector<IntPoly>> sum_pows, prod_pows;
  for (int n = 0; n < N; ++n) {
    IntPoly gx = ghost(X, n), gy = ghost(Y, n);
    IntPoly s = gx;
    s += gy;
    solve_ghost_level(n, p, s, wp->sum, sum_pows);
    solve_ghost_level(n, p, gx * gy, wp->product, prod_pows);
  }
  for (int n = 0; n < N; ++n) {
    wp->sum_mod_p.push_back(reduce_mod_p(wp->sum[n], p, wp->max_exponent));
    wp->product_mod_p.push_back(reduce_mod_p(wp->product[n], p, wp->max_exponent));
  }
  return wp;
}

} // namespace

const WittPolynomials &witt_polynomials(int p, int length) {
  if (!is_prime(p))
    throw std::invalid_argument(fmt::format("Witt polynomials: p = {} is not prime", p));
  if (length < 1 || length > 8)
    throw std::invalid_argument(fmt::format("Witt length {} outside [1, 8]", length));
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<WittPolynomials>> cache;
  std::lock_guard lock(mu);
  auto &slot = cache[{p, length}];
  if (!slot)
    slot = build(p, length);
  return *slot;
}

} // namespace crys
