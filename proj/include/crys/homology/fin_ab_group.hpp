#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "crys/exactalg/finite_field.hpp"

namespace crys {

/// Finitely generated abelian group in invariant-factor normal form:
/// Z/d_1 + ... + Z/d_r + Z^free with 1 < d_1 | d_2 | ... | d_r.
class FinAbGroup {
public:
  FinAbGroup() = default;
  /// Normalizes arbitrary cyclic orders; orders 1 are dropped, order 0 counts as a free summand.
  static FinAbGroup from_orders(std::span<const Integer> orders, int free_rank = 0);
  static FinAbGroup from_orders(std::initializer_list<long> orders, int free_rank = 0);
  static FinAbGroup free(int rank) { return from_orders(std::span<const Integer>{}, rank); }
  static FinAbGroup cyclic(const Integer &n);
  static FinAbGroup zero() { return {}; }

  const std::vector<Integer> &torsion() const { return torsion_; }
  int free_rank() const { return free_rank_; }
  bool is_zero() const { return torsion_.empty() && free_rank_ == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Number of cyclic summands (torsion plus free).
  int num_generators() const { return static_cast<int>(torsion_.size()) + free_rank_; }
  /// |G| for finite G; throws for infinite groups.
  Integer order() const;
  /// Smallest e > 0 with eG = 0; 0 if G has a free part.
  Integer exponent() const;
  /// |G[n]| = |{x : nx = 0}|; throws if G has a free part and n == 0.
  Integer torsion_subgroup_order(const Integer &n) const;
  bool killed_by(const Integer &n) const;

  FinAbGroup direct_sum(const FinAbGroup &o) const;
  FinAbGroup tensor(const FinAbGroup &o) const;
  FinAbGroup tor(const FinAbGroup &o) const;
  /// G / nG, i.e. G tensor Z/n.
  FinAbGroup mod(const Integer &n) const;
  FinAbGroup power(int k) const;

  /// e.g. "Z^2 + Z/2 + Z/4", "0" for the trivial group.
  std::string str() const;

  friend bool operator==(const FinAbGroup &a, const FinAbGroup &b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

  friend std::ostream &operator<<(std::ostream &os, const FinAbGroup &g);

private:
  std::vector<Integer> torsion_;
  int free_rank_ = 0;
};

} // namespace crys
