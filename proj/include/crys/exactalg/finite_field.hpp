#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace crys {

using Integer = mpz_class;

bool is_prime(long n);

/// The finite field F_{p^d}, realised as F_p[x]/(f) for a monic irreducible f.
///
/// Elements are encoded as integers in [0, p^d): the coefficient of x^i is the
/// i-th base-p digit. All arithmetic is table driven, so p^d is capped (see
/// kMaxOrder).
class GaloisField {
public:
  static constexpr int kMaxOrder = 1024;

  /// Uses the shipped default modulus for (p, d); throws if none is shipped.
  static std::shared_ptr<const GaloisField> make(int p, int d);
  /// `modulus` lists coefficients from x^0 up to the leading 1 (size d + 1).
  static std::shared_ptr<const GaloisField> make(int p, std::vector<int> modulus);

  /// Default modulus polynomial for (p, d), low-to-high, or empty if none shipped.
  static std::vector<int> default_modulus(int p, int d);

  int p() const { return p_; }
  int d() const { return d_; }
  int order() const { return q_; }
  const std::vector<int> &modulus() const { return modulus_; }

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return add_[a * q_ + b]; }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mul_[a * q_ + b]; }
  std::uint16_t neg(std::uint16_t a) const { return neg_[a]; }
  std::uint16_t sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }
  std::uint16_t inv(std::uint16_t a) const;
  std::uint16_t frobenius(std::uint16_t a) const { return frob_[a]; }
  std::uint16_t inverse_frobenius(std::uint16_t a) const { return frob_inv_[a]; }
  std::uint16_t pow(std::uint16_t a, const Integer &e) const;
  std::uint16_t from_int(long n) const;

  std::vector<int> coeffs(std::uint16_t a) const;
  std::uint16_t encode(const std::vector<int> &coeffs) const;

  bool same_as(const GaloisField &other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

private:
  GaloisField(int p, std::vector<int> modulus);

  int p_;
  int d_;
  int q_;
  std::vector<int> modulus_;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_, frob_, frob_inv_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Value type wrapper around an encoded field element.
class FieldElement {
public:
  FieldElement(FieldPtr field, std::uint16_t code);
  static FieldElement from_coeffs(FieldPtr field, const std::vector<int> &coeffs);

  const FieldPtr &field() const { return field_; }
  std::uint16_t code() const { return code_; }
  std::vector<int> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElement frobenius() const { return {field_, field_->frobenius(code_)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }

  friend FieldElement operator+(const FieldElement &a, const FieldElement &b);
  friend FieldElement operator-(const FieldElement &a, const FieldElement &b);
  friend FieldElement operator*(const FieldElement &a, const FieldElement &b);
  friend bool operator==(const FieldElement &a, const FieldElement &b) {
    return a.code_ == b.code_ && a.field_->same_as(*b.field_);
  }

private:
  FieldPtr field_;
  std::uint16_t code_;
};

} // namespace crys
