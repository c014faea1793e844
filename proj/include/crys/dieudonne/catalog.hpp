#pragma once

#include <string>
#include <variant>

#include "crys/dieudonne/module.hpp"

namespace crys {

/// Parsed catalog name. Accepted spellings: "constant(p^n)" or "Z/p^n" (also a
/// plain integer order such as "Z/9"), "mu(p^n)", "alpha_p", "W(n,m)",
/// "Qp/Zp", "mu(p^inf)", "etale(h)".
struct CatalogEntry {
  enum Kind { Constant, Mu, AlphaP, WittKernel, QpZp, MuInfinity, EtaleHeight } kind;
  int n = 1; // level: G = Z/p^n, mu_{p^n}; for W(n,m) the V-relation
  int m = 1; // for W(n,m) the F-relation
  int height = 1;
  /// Whether H^* of the Cech levels is desk-computable (the constant/etale cases).
  bool is_etale() const { return kind == Constant || kind == QpZp || kind == EtaleHeight; }
  bool is_p_divisible() const { return kind == QpZp || kind == MuInfinity || kind == EtaleHeight; }
  std::string name() const;
  static CatalogEntry parse(const std::string &name, int p);
};

using CatalogModule = std::variant<DieudonneModule, PDivisibleModule>;

/// The standard Dieudonne module of the entry, over the given W_N(k).
CatalogModule catalog(const CatalogEntry &entry, const WittRingPtr &ring);
CatalogModule catalog(const std::string &name, const WittRingPtr &ring);

} // namespace crys
