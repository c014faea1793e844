#include "crys/homology/fin_ab_group.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace crys {

FinAbGroup FinAbGroup::from_orders(std::span<const Integer> orders, int free_rank) {
  if (free_rank < 0)
    throw std::invalid_argument("negative free rank");
  FinAbGroup g;
  g.free_rank_ = free_rank;
  std::vector<Integer> t;
  for (const auto &o : orders) {
    Integer a = abs(o);
    if (a == 0)
      ++g.free_rank_;
    else if (a != 1)
      t.push_back(a);
  }
  // pairwise (gcd, lcm) exchange yields the divisibility chain without factoring
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      Integer gg = gcd(t[i], t[j]);
      Integer ll = t[i] / gg * t[j];
      t[i] = gg;
      t[j] = ll;
    }
  for (auto &x : t)
    if (x != 1)
      g.torsion_.push_back(x);
  return g;
}

FinAbGroup FinAbGroup::from_orders(std::initializer_list<long> orders, int free_rank) {
  std::vector<Integer> v(orders.begin(), orders.end());
  return from_orders(std::span<const Integer>(v), free_rank);
}

FinAbGroup FinAbGroup::cyclic(const Integer &n) {
  std::vector<Integer> v{n};
  return from_orders(std::span<const Integer>(v));
}

Integer FinAbGroup::order() const {
  if (free_rank_)
    throw std::domain_error("order of an infinite group");
  Integer n = 1;
  for (const auto &d : torsion_)
    n *= d;
  return n;
}

Integer FinAbGroup::exponent() const {
  if (free_rank_)
    return 0;
  return torsion_.empty() ? Integer(1) : torsion_.back();
}

Integer FinAbGroup::torsion_subgroup_order(const Integer &n) const {
  if (n == 0) {
    if (free_rank_)
      throw std::domain_error("G[0] is infinite");
    return order();
  }
  Integer r = 1;
  for (const auto &d : torsion_)
    r *= gcd(d, n);
  return r;
}

bool FinAbGroup::killed_by(const Integer &n) const {
  if (free_rank_)
    return false;
  return std::all_of(torsion_.begin(), torsion_.end(),
                     [&](const Integer &d) { return n % d == 0; });
}

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup &o) const {
  std::vector<Integer> v = torsion_;
  v.insert(v.end(), o.torsion_.begin(), o.torsion_.end());
  return from_orders(std::span<const Integer>(v), free_rank_ + o.free_rank_);
}

FinAbGroup FinAbGroup::tensor(const FinAbGroup &o) const {
  std::vector<Integer> v;
  for (const auto &a : torsion_)
    for (const auto &b : o.torsion_)
      v.push_back(gcd(a, b));
  for (int k = 0; k < free_rank_; ++k)
    v.insert(v.end(), o.torsion_.begin(), o.torsion_.end());
  for (int k = 0; k < o.free_rank_; ++k)
    v.insert(v.end(), torsion_.begin(), torsion_.end());
  return from_orders(std::span<const Integer>(v), free_rank_ * o.free_rank_);
}

FinAbGroup FinAbGroup::tor(const FinAbGroup &o) const {
  std::vector<Integer> v;
  for (const auto &a : torsion_)
    for (const auto &b : o.torsion_)
      v.push_back(gcd(a, b));
  return from_orders(std::span<const Integer>(v));
}

FinAbGroup FinAbGroup::mod(const Integer &n) const {
  if (n == 0)
    return *this;
  std::vector<Integer> v;
  for (const auto &d : torsion_)
    v.push_back(gcd(d, n));
  for (int k = 0; k < free_rank_; ++k)
    v.push_back(abs(n));
  return from_orders(std::span<const Integer>(v));
}

FinAbGroup FinAbGroup::power(int k) const {
  FinAbGroup r;
  for (int i = 0; i < k; ++i)
    r = r.direct_sum(*this);
  return r;
}

std::string FinAbGroup::str() const {
  if (is_zero())
    return "0";
  std::string s;
  if (free_rank_)
    s = free_rank_ == 1 ? "Z" : "Z^" + std::to_string(free_rank_);
  for (const auto &d : torsion_) {
    if (!s.empty())
      s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

std::ostream &operator<<(std::ostream &os, const FinAbGroup &g) { return os << g.str(); }

} // namespace crys
