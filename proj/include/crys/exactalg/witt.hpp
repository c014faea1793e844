#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "crys/exactalg/finite_field.hpp"
#include "crys/exactalg/witt_poly.hpp"

namespace crys {

class WittVector;

/// The ring W_N(F_{p^d}) of length-N Witt vectors over a finite field.
class WittRing : public std::enable_shared_from_this<WittRing> {
public:
  static std::shared_ptr<const WittRing> make(FieldPtr field, int length);
  static std::shared_ptr<const WittRing> make(int p, int d, int length);

  const FieldPtr &field() const { return field_; }
  int p() const { return field_->p(); }
  int d() const { return field_->d(); }
  int length() const { return length_; }
  bool same_as(const WittRing &o) const { return length_ == o.length_ && field_->same_as(*o.field_); }

  WittVector zero() const;
  WittVector one() const;
  /// Image of n under Z -> W_N(F_p) -> W_N(F_{p^d}).
  WittVector from_integer(const Integer &n) const;
  WittVector teichmuller(std::uint16_t a) const;
  WittVector from_coords(std::vector<std::uint16_t> coords) const;

  std::vector<std::uint16_t> add(std::span<const std::uint16_t> u, std::span<const std::uint16_t> v) const;
  std::vector<std::uint16_t> mul(std::span<const std::uint16_t> u, std::span<const std::uint16_t> v) const;
  std::vector<std::uint16_t> neg(std::span<const std::uint16_t> u) const;

  /// Reference arithmetic: evaluates the universal Witt polynomials directly.
  /// Builds them on first use, which is expensive beyond N = 6.
  std::vector<std::uint16_t> polynomial_add(std::span<const std::uint16_t> u,
                                            std::span<const std::uint16_t> v) const;
  std::vector<std::uint16_t> polynomial_mul(std::span<const std::uint16_t> u,
                                            std::span<const std::uint16_t> v) const;

  /// Element of the Galois ring (Z/p^N)[x]/(F), F the monic integer lift of
  /// the field modulus; coefficients of 1, x, ..., x^{d-1}.
  using GaloisElement = std::vector<Integer>;
  GaloisElement to_galois(std::span<const std::uint16_t> coords) const;
  std::vector<std::uint16_t> from_galois(GaloisElement g) const;

private:
  WittRing(FieldPtr field, int length);
  std::vector<std::uint16_t> evaluate(const std::vector<std::vector<WittPolynomials::Term>> &polys,
                                      std::span<const std::uint16_t> u,
                                      std::span<const std::uint16_t> v) const;
  GaloisElement galois_mul(const GaloisElement &a, const GaloisElement &b) const;
  FieldPtr field_;
  int length_;
  Integer modulus_; // p^N
  std::vector<GaloisElement> teichmuller_; // indexed by field code
};

using WittRingPtr = std::shared_ptr<const WittRing>;

/// Element of W_N(F_{p^d}); coordinates x_0..x_{N-1} are encoded field elements.
class WittVector {
public:
  WittVector(WittRingPtr ring, std::vector<std::uint16_t> coords);

  const WittRingPtr &ring() const { return ring_; }
  int length() const { return ring_->length(); }
  const std::vector<std::uint16_t> &coords() const { return coords_; }
  FieldElement coord(int i) const { return {ring_->field(), coords_.at(i)}; }

  bool is_zero() const;
  /// Largest v with this in p^v W_N (length() for zero).
  int valuation() const;
  bool is_unit() const { return coords_[0] != 0; }

  /// Witt vector Frobenius sigma (coordinatewise p-th power).
  WittVector frobenius() const;
  WittVector inverse_frobenius() const;
  WittVector sigma_power(int k) const;
  /// Verschiebung, shift-and-truncate within W_N.
  WittVector verschiebung() const;
  WittVector negate() const;
  WittVector inverse() const;
  /// Returns y with p^v * y == *this, where v <= valuation(); top v coordinates of y are zero.
  WittVector divide_by_p_power(int v) const;
  /// Reduction modulo p^e, i.e. truncation to the first e coordinates.
  WittVector truncated(int e) const;
  /// For d = 1: the residue in Z/p^N under W_N(F_p) = Z/p^N.
  Integer to_integer() const;

  friend WittVector operator+(const WittVector &a, const WittVector &b);
  friend WittVector operator-(const WittVector &a, const WittVector &b);
  friend WittVector operator*(const WittVector &a, const WittVector &b);
  friend bool operator==(const WittVector &a, const WittVector &b);

private:
  WittRingPtr ring_;
  std::vector<std::uint16_t> coords_;
};

} // namespace crys
