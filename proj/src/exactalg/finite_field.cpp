#include "crys/exactalg/finite_field.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace crys {

bool is_prime(long n) {
  if (n < 2)
    return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0)
      return false;
  return true;
}

std::vector<int> GaloisField::default_modulus(int p, int d) {
  // Conway polynomials, coefficients low to high.
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 1}, {0, 1}},       {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},
      {{3, 1}, {0, 1}},       {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}},
      {{5, 1}, {0, 1}},       {{5, 2}, {2, 4, 1}},    {{5, 3}, {3, 3, 0, 1}},
      {{7, 1}, {0, 1}},       {{7, 2}, {3, 6, 1}},    {{7, 3}, {4, 0, 6, 1}},
  };
  if (d == 1 && is_prime(p))
    return {0, 1};
  auto it = table.find({p, d});
  return it == table.end() ? std::vector<int>{} : it->second;
}

std::shared_ptr<const GaloisField> GaloisField::make(int p, int d) {
  if (!is_prime(p))
    throw std::invalid_argument(fmt::format("p = {} is not prime", p));
  if (d < 1)
    throw std::invalid_argument("extension degree must be >= 1");
  auto m = default_modulus(p, d);
  if (m.empty())
    throw std::invalid_argument(
        fmt::format("no default modulus for F_{{{}^{}}}; supply one explicitly", p, d));
  return make(p, std::move(m));
}

std::shared_ptr<const GaloisField> GaloisField::make(int p, std::vector<int> modulus) {
  return std::shared_ptr<const GaloisField>(new GaloisField(p, std::move(modulus)));
}

GaloisField::GaloisField(int p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p))
    throw std::invalid_argument(fmt::format("p = {} is not prime", p));
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (int &c : modulus_) {
    c %= p;
    if (c < 0)
      c += p;
  }
  d_ = static_cast<int>(modulus_.size()) - 1;
  long q = 1;
  for (int i = 0; i < d_; ++i) {
    q *= p;
    if (q > kMaxOrder)
      throw std::invalid_argument(fmt::format("field order {}^{} exceeds table limit", p, d_));
  }
  q_ = static_cast<int>(q);

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    auto ca = coeffs(a);
    std::vector<int> n(d_);
    for (int i = 0; i < d_; ++i)
      n[i] = (p - ca[i]) % p;
    neg_[a] = encode(n);
    for (int b = 0; b < q_; ++b) {
      auto cb = coeffs(b);
      std::vector<int> s(d_);
      for (int i = 0; i < d_; ++i)
        s[i] = (ca[i] + cb[i]) % p;
      add_[a * q_ + b] = encode(s);
      // schoolbook product, then reduce by the monic modulus from the top
      std::vector<int> prod(2 * d_ - 1, 0);
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
          prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      for (int k = 2 * d_ - 2; k >= d_; --k) {
        int c = prod[k];
        if (!c)
          continue;
        for (int i = 0; i <= d_; ++i)
          prod[k - d_ + i] = ((prod[k - d_ + i] - c * modulus_[i]) % p + p) % p;
      }
      prod.resize(d_);
      mul_[a * q_ + b] = encode(prod);
    }
  }

  inv_.assign(q_, 0);
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b)
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
    if (!inv_[a])
      throw std::invalid_argument("modulus is not irreducible");
  }

  frob_.resize(q_);
  frob_inv_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    std::uint16_t r = 1;
    for (int i = 0; i < p_; ++i)
      r = mul(r, a);
    frob_[a] = a == 0 ? 0 : r;
  }
  for (int a = 0; a < q_; ++a)
    frob_inv_[frob_[a]] = a;
}

std::uint16_t GaloisField::inv(std::uint16_t a) const {
  if (a == 0)
    throw std::domain_error("inverse of zero in finite field");
  return inv_[a];
}

std::uint16_t GaloisField::pow(std::uint16_t a, const Integer &e) const {
  if (e == 0)
    return 1;
  if (a == 0)
    return 0;
  // the multiplicative group has order q - 1
  Integer r = e % (q_ - 1);
  unsigned long k = r.get_ui();
  std::uint16_t result = 1, base = a;
  while (k) {
    if (k & 1)
      result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint16_t GaloisField::from_int(long n) const {
  long r = n % p_;
  if (r < 0)
    r += p_;
  return static_cast<std::uint16_t>(r);
}

std::vector<int> GaloisField::coeffs(std::uint16_t a) const {
  std::vector<int> c(d_);
  for (int i = 0; i < d_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

std::uint16_t GaloisField::encode(const std::vector<int> &c) const {
  if (static_cast<int>(c.size()) != d_)
    throw std::invalid_argument(fmt::format("expected {} coefficients, got {}", d_, c.size()));
  int code = 0;
  for (int i = d_ - 1; i >= 0; --i) {
    if (c[i] < 0 || c[i] >= p_)
      throw std::invalid_argument(fmt::format("coefficient {} outside [0, {})", c[i], p_));
    code = code * p_ + c[i];
  }
  return static_cast<std::uint16_t>(code);
}

FieldElement::FieldElement(FieldPtr field, std::uint16_t code) : field_(std::move(field)), code_(code) {
  if (code_ >= field_->order())
    throw std::invalid_argument("field element code out of range");
}

FieldElement FieldElement::from_coeffs(FieldPtr field, const std::vector<int> &coeffs) {
  auto code = field->encode(coeffs);
  return {std::move(field), code};
}

static void check_same(const FieldElement &a, const FieldElement &b) {
  if (!a.field()->same_as(*b.field()))
    throw std::invalid_argument("field elements belong to different fields");
}

FieldElement operator+(const FieldElement &a, const FieldElement &b) {
  check_same(a, b);
  return {a.field_, a.field_->add(a.code_, b.code_)};
}
FieldElement operator-(const FieldElement &a, const FieldElement &b) {
  check_same(a, b);
  return {a.field_, a.field_->sub(a.code_, b.code_)};
}
FieldElement operator*(const FieldElement &a, const FieldElement &b) {
  check_same(a, b);
  return {a.field_, a.field_->mul(a.code_, b.code_)};
}

} // namespace crys
