#include "crys/exactalg/witt.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace crys {

std::shared_ptr<const WittRing> WittRing::make(FieldPtr field, int length) {
  return std::shared_ptr<const WittRing>(new WittRing(std::move(field), length));
}

std::shared_ptr<const WittRing> WittRing::make(int p, int d, int length) {
  return make(GaloisField::make(p, d), length);
}

WittRing::WittRing(FieldPtr field, int length) : field_(std::move(field)), length_(length) {
  if (length < 1)
    throw std::invalid_argument("Witt length must be >= 1");
  const int p = field_->p(), d = field_->d(), q = field_->order();
  mpz_ui_pow_ui(modulus_.get_mpz_t(), p, length);
  // [a] = lim a~^(q^k); q^(N-1) steps of Frobenius fix N p-adic digits
  teichmuller_.resize(q);
  for (int a = 0; a < q; ++a) {
    auto c = field_->coeffs(static_cast<std::uint16_t>(a));
    GaloisElement g(c.begin(), c.end());
    g.resize(d);
    for (int k = 0; k < length - 1; ++k) {
      // g <- g^q by repeated p-th powers
      for (int j = 0; j < d; ++j) {
        GaloisElement r(d, 0);
        r[0] = 1;
        for (int e = 0; e < p; ++e)
          r = galois_mul(r, g);
        g = std::move(r);
      }
    }
    teichmuller_[a] = std::move(g);
  }
}

WittRing::GaloisElement WittRing::galois_mul(const GaloisElement &a, const GaloisElement &b) const {
  const int d = field_->d();
  const auto &f = field_->modulus();
  std::vector<Integer> r(2 * d - 1, 0);
  for (int i = 0; i < d; ++i)
    if (a[i] != 0)
      for (int j = 0; j < d; ++j)
        r[i + j] += a[i] * b[j];
  for (int k = 2 * d - 2; k >= d; --k) {
    if (r[k] == 0)
      continue;
    for (int j = 0; j < d; ++j)
      r[k - d + j] -= r[k] * f[j];
  }
  GaloisElement out(r.begin(), r.begin() + d);
  for (auto &x : out)
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return out;
}

WittRing::GaloisElement WittRing::to_galois(std::span<const std::uint16_t> coords) const {
  // (x_0, x_1, ...) = sum_i V^i [x_i] = sum_i p^i [x_i^(p^-i)]
  const int d = field_->d();
  GaloisElement g(d, 0);
  Integer pi = 1;
  for (int i = 0; i < length_; ++i) {
    std::uint16_t y = coords[i];
    if (y) {
      for (int k = 0; k < i; ++k)
        y = field_->inverse_frobenius(y);
      const auto &t = teichmuller_[y];
      for (int j = 0; j < d; ++j)
        g[j] += pi * t[j];
    }
    pi *= field_->p();
  }
  for (auto &x : g)
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return g;
}

std::vector<std::uint16_t> WittRing::from_galois(GaloisElement g) const {
  const int p = field_->p(), d = field_->d();
  std::vector<std::uint16_t> coords(length_, 0);
  std::vector<int> digits(d);
  for (int i = 0; i < length_; ++i) {
    for (int j = 0; j < d; ++j)
      digits[j] = static_cast<int>(mpz_fdiv_ui(g[j].get_mpz_t(), p));
    std::uint16_t z = field_->encode(digits);
    if (z) {
      const auto &t = teichmuller_[z];
      for (int j = 0; j < d; ++j)
        g[j] -= t[j];
    }
    for (auto &x : g)
      mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    for (int k = 0; k < i; ++k)
      z = field_->frobenius(z);
    coords[i] = z;
  }
  return coords;
}

WittVector WittRing::zero() const {
  return {shared_from_this(), std::vector<std::uint16_t>(length_, 0)};
}

WittVector WittRing::one() const { return teichmuller(1); }

WittVector WittRing::teichmuller(std::uint16_t a) const {
  std::vector<std::uint16_t> c(length_, 0);
  c[0] = a;
  return {shared_from_this(), std::move(c)};
}

WittVector WittRing::from_coords(std::vector<std::uint16_t> coords) const {
  return {shared_from_this(), std::move(coords)};
}

WittVector WittRing::from_integer(const Integer &n) const {
  GaloisElement g(field_->d(), 0);
  mpz_fdiv_r(g[0].get_mpz_t(), n.get_mpz_t(), modulus_.get_mpz_t());
  return {shared_from_this(), from_galois(std::move(g))};
}

std::vector<std::uint16_t> WittRing::evaluate(const std::vector<std::vector<WittPolynomials::Term>> &polys,
                                              std::span<const std::uint16_t> u,
                                              std::span<const std::uint16_t> v) const {
  const auto &F = *field_;
  const int nv = 2 * length_;
  const std::uint32_t maxe = witt_polynomials(field_->p(), length_).max_exponent;
  // powers[var][e] = value_var^e
  std::vector<std::vector<std::uint16_t>> powers(nv);
  for (int var = 0; var < nv; ++var) {
    std::uint16_t x = var < length_ ? u[var] : v[var - length_];
    auto &pw = powers[var];
    pw.resize(maxe + 1);
    pw[0] = 1;
    for (std::uint32_t e = 1; e <= maxe; ++e)
      pw[e] = F.mul(pw[e - 1], x);
  }
  std::vector<std::uint16_t> out(length_, 0);
  for (int n = 0; n < length_; ++n) {
    std::uint16_t acc = 0;
    for (const auto &t : polys[n]) {
      std::uint16_t val = t.coeff;
      for (const auto &[var, e] : t.powers) {
        val = F.mul(val, powers[var][e]);
        if (!val)
          break;
      }
      acc = F.add(acc, val);
    }
    out[n] = acc;
  }
  return out;
}

std::vector<std::uint16_t> WittRing::polynomial_add(std::span<const std::uint16_t> u,
                                                  std::span<const std::uint16_t> v) const {
  return evaluate(witt_polynomials(field_->p(), length_).sum_mod_p, u, v);
}

std::vector<std::uint16_t> WittRing::polynomial_mul(std::span<const std::uint16_t> u,
                                                  std::span<const std::uint16_t> v) const {
  return evaluate(witt_polynomials(field_->p(), length_).product_mod_p, u, v);
}

std::vector<std::uint16_t> WittRing::add(std::span<const std::uint16_t> u, std::span<const std::uint16_t> v) const {
  auto a = to_galois(u);
  auto b = to_galois(v);
  for (int j = 0; j < field_->d(); ++j) {
    a[j] += b[j];
    if (a[j] >= modulus_)
      a[j] -= modulus_;
  }
  return from_galois(std::move(a));
}

std::vector<std::uint16_t> WittRing::mul(std::span<const std::uint16_t> u, std::span<const std::uint16_t> v) const {
  return from_galois(galois_mul(to_galois(u), to_galois(v)));
}

std::vector<std::uint16_t> WittRing::neg(std::span<const std::uint16_t> u) const {
  auto a = to_galois(u);
  for (auto &x : a)
    if (x != 0)
      x = modulus_ - x;
  return from_galois(std::move(a));
}

WittVector::WittVector(WittRingPtr ring, std::vector<std::uint16_t> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != ring_->length())
    throw std::invalid_argument(
        fmt::format("Witt vector has {} coordinates, ring length is {}", coords_.size(), ring_->length()));
  for (auto c : coords_)
    if (c >= ring_->field()->order())
      throw std::invalid_argument("Witt coordinate out of range");
}

bool WittVector::is_zero() const {
  for (auto c : coords_)
    if (c)
      return false;
  return true;
}

int WittVector::valuation() const {
  // p^v W_N(k) = V^v W_N(k) for perfect k: the first v coordinates vanish.
  for (int i = 0; i < length(); ++i)
    if (coords_[i])
      return i;
  return length();
}

WittVector WittVector::frobenius() const {
  auto c = coords_;
  for (auto &x : c)
    x = ring_->field()->frobenius(x);
  return {ring_, std::move(c)};
}

WittVector WittVector::inverse_frobenius() const {
  auto c = coords_;
  for (auto &x : c)
    x = ring_->field()->inverse_frobenius(x);
  return {ring_, std::move(c)};
}

WittVector WittVector::sigma_power(int k) const {
  const int d = ring_->d();
  k %= d;
  if (k < 0)
    k += d;
  WittVector r = *this;
  for (int i = 0; i < k; ++i)
    r = r.frobenius();
  return r;
}

WittVector WittVector::verschiebung() const {
  std::vector<std::uint16_t> c(length(), 0);
  for (int i = 0; i + 1 < length(); ++i)
    c[i + 1] = coords_[i];
  return {ring_, std::move(c)};
}

WittVector WittVector::negate() const { return {ring_, ring_->neg(coords_)}; }

WittVector WittVector::inverse() const {
  if (!is_unit())
    throw std::domain_error("Witt vector is not a unit");
  const auto &F = *ring_->field();
  WittVector x = ring_->teichmuller(F.inv(coords_[0]));
  WittVector two = ring_->from_integer(2);
  // Newton iteration doubles the p-adic precision each step
  for (int prec = 1; prec < length(); prec *= 2)
    x = x * (two - *this * x);
  if (!(*this * x == ring_->one()))
    throw std::logic_error("Witt inverse failed to converge");
  return x;
}

WittVector WittVector::divide_by_p_power(int v) const {
  if (v > valuation())
    throw std::domain_error(fmt::format("valuation {} < {}", valuation(), v));
  std::vector<std::uint16_t> c(length(), 0);
  for (int i = v; i < length(); ++i)
    c[i - v] = coords_[i];
  // p^v = V^v F^v, so undo the F^v twist
  return WittVector(ring_, std::move(c)).sigma_power(-v);
}

WittVector WittVector::truncated(int e) const {
  auto c = coords_;
  for (int i = std::max(e, 0); i < length(); ++i)
    c[i] = 0;
  return {ring_, std::move(c)};
}

Integer WittVector::to_integer() const {
  if (ring_->d() != 1)
    throw std::invalid_argument("to_integer requires d = 1");
  const int p = ring_->p(), N = length();
  Integer mod, e, t, total = 0, pi = 1;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, N);
  mpz_ui_pow_ui(e.get_mpz_t(), p, N - 1);
  for (int i = 0; i < N; ++i) {
    // Teichmuller lift of x_i in Z/p^N is x_i^{p^{N-1}}
    Integer xi = coords_[i];
    mpz_powm(t.get_mpz_t(), xi.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    total += pi * t;
    pi *= p;
  }
  return total % mod;
}

static void check_same(const WittVector &a, const WittVector &b) {
  if (!a.ring()->same_as(*b.ring()))
    throw std::invalid_argument("Witt vectors have mismatched (p, d, N)");
}

WittVector operator+(const WittVector &a, const WittVector &b) {
  check_same(a, b);
  return {a.ring_, a.ring_->add(a.coords_, b.coords_)};
}

WittVector operator-(const WittVector &a, const WittVector &b) { return a + b.negate(); }

WittVector operator*(const WittVector &a, const WittVector &b) {
  check_same(a, b);
  return {a.ring_, a.ring_->mul(a.coords_, b.coords_)};
}

bool operator==(const WittVector &a, const WittVector &b) {
  return a.ring_->same_as(*b.ring_) && a.coords_ == b.coords_;
}

} // namespace crys
