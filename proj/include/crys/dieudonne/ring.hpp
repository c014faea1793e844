#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "crys/exactalg/witt.hpp"

namespace crys {

/// Element of the truncated Dieudonne ring W_N(k)[F, V] / (FV = VF = p,
/// F c = sigma(c) F, c V = V sigma(c)), stored in the canonical form
/// sum_i a_i X^i with coefficients on the left, where X^i is F^i for i > 0,
/// V^{-i} for i < 0 and 1 for i = 0. Zero coefficients are never stored.
class DieudonneElement {
public:
  explicit DieudonneElement(WittRingPtr ring) : ring_(std::move(ring)) {}
  static DieudonneElement scalar(const WittVector &c);
  static DieudonneElement frobenius(WittRingPtr ring);
  static DieudonneElement verschiebung(WittRingPtr ring);
  /// a * X^exponent
  static DieudonneElement monomial(const WittVector &a, int exponent);

  const WittRingPtr &ring() const { return ring_; }
  const std::map<int, WittVector> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  WittVector coefficient(int exponent) const;

  DieudonneElement operator-() const;
  friend DieudonneElement operator+(const DieudonneElement &a, const DieudonneElement &b);
  friend DieudonneElement operator-(const DieudonneElement &a, const DieudonneElement &b);
  friend DieudonneElement operator*(const DieudonneElement &a, const DieudonneElement &b);
  friend bool operator==(const DieudonneElement &a, const DieudonneElement &b);
  DieudonneElement pow(int e) const;

  /// Renders the canonical form, e.g. "V^2*(0,1) + 2 + F" (scalars in Witt
  /// coordinates unless they are small integers over F_p).
  std::string str() const;
  friend std::ostream &operator<<(std::ostream &os, const DieudonneElement &x) { return os << x.str(); }

private:
  void add_term(int exponent, const WittVector &a);
  WittRingPtr ring_;
  std::map<int, WittVector> terms_;
};

/// One letter of a formal word: F, V, or a scalar.
struct DieudonneLetter {
  enum Kind { F, V, Scalar } kind;
  std::vector<std::uint16_t> coords; // only for Scalar
};

/// A formal sum of formal products of letters, with integer multiplicities.
struct DieudonneWord {
  struct Product {
    long multiplicity = 1;
    std::vector<DieudonneLetter> letters;
  };
  std::vector<Product> summands;

  /// Expands a word such as "(F+V)^2", "F*[3]*V - 2p" or "V F [1,0]" into
  /// products. Grammar: sums of products of atoms with optional ^exponent;
  /// atoms are F, V, p, integers, [c] (Teichmuller lift of field code c),
  /// [c0,c1,...] (Witt coordinates) and parenthesized words.
  static DieudonneWord parse(const std::string &text, const WittRing &ring);
};

/// Reduces a formal word to canonical form.
DieudonneElement canonical_form(const DieudonneWord &word, const WittRingPtr &ring);
DieudonneElement canonical_form(const std::string &word, const WittRingPtr &ring);

/// A formal word that reduces to the given element (one product per term).
DieudonneWord to_word(const DieudonneElement &x);

} // namespace crys
