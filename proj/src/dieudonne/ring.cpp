#include "crys/dieudonne/ring.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

namespace crys {

namespace {

WittVector p_power(const WittRing &ring, int k) {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), ring.p(), k);
  return ring.from_integer(q);
}

std::string scalar_str(const WittVector &a) {
  if (a.ring()->d() == 1) {
    // print the representative of least absolute value
    Integer n = a.to_integer(), mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), a.ring()->p(), a.length());
    if (2 * n > mod)
      n -= mod;
    return n.get_str();
  }
  std::string s = "[";
  for (std::size_t i = 0; i < a.coords().size(); ++i)
    s += (i ? "," : "") + std::to_string(a.coords()[i]);
  return s + "]";
}

} // namespace

DieudonneElement DieudonneElement::scalar(const WittVector &c) { return monomial(c, 0); }

DieudonneElement DieudonneElement::frobenius(WittRingPtr ring) { return monomial(ring->one(), 1); }

DieudonneElement DieudonneElement::verschiebung(WittRingPtr ring) { return monomial(ring->one(), -1); }

DieudonneElement DieudonneElement::monomial(const WittVector &a, int exponent) {
  DieudonneElement x(a.ring());
  x.add_term(exponent, a);
  return x;
}

WittVector DieudonneElement::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? ring_->zero() : it->second;
}

void DieudonneElement::add_term(int exponent, const WittVector &a) {
  if (a.is_zero())
    return;
  auto it = terms_.find(exponent);
  if (it == terms_.end()) {
    terms_.emplace(exponent, a);
    return;
  }
  it->second = it->second + a;
  if (it->second.is_zero())
    terms_.erase(it);
}

DieudonneElement DieudonneElement::operator-() const {
  DieudonneElement r(ring_);
  for (const auto &[e, a] : terms_)
    r.terms_.emplace(e, a.negate());
  return r;
}

DieudonneElement operator+(const DieudonneElement &a, const DieudonneElement &b) {
  if (!a.ring_->same_as(*b.ring_))
    throw std::invalid_argument("Dieudonne elements over different rings");
  DieudonneElement r = a;
  for (const auto &[e, c] : b.terms_)
    r.add_term(e, c);
  return r;
}

DieudonneElement operator-(const DieudonneElement &a, const DieudonneElement &b) { return a + (-b); }

DieudonneElement operator*(const DieudonneElement &a, const DieudonneElement &b) {
  if (!a.ring_->same_as(*b.ring_))
    throw std::invalid_argument("Dieudonne elements over different rings");
  DieudonneElement r(a.ring_);
  for (const auto &[i, x] : a.terms_)
    for (const auto &[j, y] : b.terms_) {
      // x X^i y X^j = x sigma^i(y) X^i X^j, and F^k V^l = V^l F^k = p^min(k,l) X^(k-l)
      WittVector c = x * y.sigma_power(i);
      if ((i > 0 && j < 0) || (i < 0 && j > 0)) {
        const int k = std::min(std::abs(i), std::abs(j));
        if (k >= a.ring_->length())
          continue;
        c = c * p_power(*a.ring_, k);
      }
      r.add_term(i + j, c);
    }
  return r;
}

bool operator==(const DieudonneElement &a, const DieudonneElement &b) {
  return a.ring_->same_as(*b.ring_) && a.terms_ == b.terms_;
}

DieudonneElement DieudonneElement::pow(int e) const {
  if (e < 0)
    throw std::invalid_argument("negative power in the Dieudonne ring");
  DieudonneElement r = scalar(ring_->one());
  for (int k = 0; k < e; ++k)
    r = r * *this;
  return r;
}

std::string DieudonneElement::str() const {
  if (terms_.empty())
    return "0";
  std::string s;
  for (const auto &[e, a] : terms_) {
    std::string mono;
    if (e != 0)
      mono = std::string(e > 0 ? "F" : "V") + (std::abs(e) > 1 ? "^" + std::to_string(std::abs(e)) : "");
    std::string coeff = scalar_str(a);
    std::string term;
    if (mono.empty())
      term = coeff;
    else if (coeff == "1")
      term = mono;
    else if (coeff == "-1")
      term = "-" + mono;
    else
      term = coeff + "*" + mono;
    if (s.empty())
      s = term;
    else if (term[0] == '-')
      s += " - " + term.substr(1);
    else
      s += " + " + term;
  }
  return s;
}

namespace {

DieudonneWord word_product(const DieudonneWord &a, const DieudonneWord &b) {
  DieudonneWord r;
  for (const auto &x : a.summands)
    for (const auto &y : b.summands) {
      DieudonneWord::Product p;
      p.multiplicity = x.multiplicity * y.multiplicity;
      p.letters = x.letters;
      p.letters.insert(p.letters.end(), y.letters.begin(), y.letters.end());
      r.summands.push_back(std::move(p));
    }
  return r;
}

DieudonneWord constant_word(long n) {
  DieudonneWord w;
  if (n != 0)
    w.summands.push_back({n, {}});
  return w;
}

DieudonneWord letter_word(DieudonneLetter l) {
  DieudonneWord w;
  w.summands.push_back({1, {std::move(l)}});
  return w;
}

class WordParser {
public:
  WordParser(const std::string &s, const WittRing &ring) : s_(s), ring_(ring) {}

  DieudonneWord parse() {
    auto w = sum();
    skip();
    if (pos_ != s_.size())
      fail("unexpected character");
    return w;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw std::invalid_argument(fmt::format("cannot parse word '{}': {} at position {}", s_, what, pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= s_.size())
      return false;
    char c = s_[pos_];
    return c == 'F' || c == 'V' || c == 'p' || c == '[' || c == '(' ||
           std::isdigit(static_cast<unsigned char>(c));
  }
  long number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected a number");
    return std::stol(s_.substr(start, pos_ - start));
  }

  DieudonneWord sum() {
    DieudonneWord w;
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    } else if (peek('+')) {
      ++pos_;
    }
    for (;;) {
      auto t = product();
      for (auto &p : t.summands) {
        if (negate)
          p.multiplicity = -p.multiplicity;
        w.summands.push_back(std::move(p));
      }
      if (peek('+')) {
        ++pos_;
        negate = false;
      } else if (peek('-')) {
        ++pos_;
        negate = true;
      } else {
        return w;
      }
    }
  }

  DieudonneWord product() {
    auto w = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        w = word_product(w, power());
      } else if (starts_atom()) {
        w = word_product(w, power());
      } else {
        return w;
      }
    }
  }

  DieudonneWord power() {
    auto base = atom();
    if (!peek('^'))
      return base;
    ++pos_;
    long e = number();
    if (e > 64)
      fail("exponent too large");
    DieudonneWord r = constant_word(1);
    for (long k = 0; k < e; ++k)
      r = word_product(r, base);
    return r;
  }

  DieudonneWord atom() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end");
    char c = s_[pos_];
    if (c == 'F' || c == 'V') {
      ++pos_;
      return letter_word({c == 'F' ? DieudonneLetter::F : DieudonneLetter::V, {}});
    }
    if (c == 'p') {
      ++pos_;
      return constant_word(ring_.p());
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return constant_word(number());
    if (c == '(') {
      ++pos_;
      auto w = sum();
      if (!peek(')'))
        fail("expected ')'");
      ++pos_;
      return w;
    }
    if (c == '[') {
      ++pos_;
      std::vector<std::uint16_t> coords;
      for (;;) {
        long v = number();
        if (v < 0 || v >= ring_.field()->order())
          fail("field code out of range");
        coords.push_back(static_cast<std::uint16_t>(v));
        if (peek(',')) {
          ++pos_;
          continue;
        }
        if (!peek(']'))
          fail("expected ']'");
        ++pos_;
        break;
      }
      if (static_cast<int>(coords.size()) > ring_.length())
        fail("more Witt coordinates than the truncation length");
      coords.resize(ring_.length(), 0);
      return letter_word({DieudonneLetter::Scalar, std::move(coords)});
    }
    fail("unexpected character");
  }

  const std::string &s_;
  const WittRing &ring_;
  std::size_t pos_ = 0;
};

} // namespace

DieudonneWord DieudonneWord::parse(const std::string &text, const WittRing &ring) {
  return WordParser(text, ring).parse();
}

DieudonneElement canonical_form(const DieudonneWord &word, const WittRingPtr &ring) {
  DieudonneElement total(ring);
  const auto F = DieudonneElement::frobenius(ring);
  const auto V = DieudonneElement::verschiebung(ring);
  for (const auto &p : word.summands) {
    DieudonneElement x = DieudonneElement::scalar(ring->from_integer(p.multiplicity));
    for (const auto &l : p.letters) {
      switch (l.kind) {
      case DieudonneLetter::F:
        x = x * F;
        break;
      case DieudonneLetter::V:
        x = x * V;
        break;
      case DieudonneLetter::Scalar:
        x = x * DieudonneElement::scalar(ring->from_coords(l.coords));
        break;
      }
    }
    total = total + x;
  }
  return total;
}

DieudonneElement canonical_form(const std::string &word, const WittRingPtr &ring) {
  return canonical_form(DieudonneWord::parse(word, *ring), ring);
}

DieudonneWord to_word(const DieudonneElement &x) {
  DieudonneWord w;
  for (const auto &[e, a] : x.terms()) {
    DieudonneWord::Product p;
    p.letters.push_back({DieudonneLetter::Scalar, a.coords()});
    for (int k = 0; k < std::abs(e); ++k)
      p.letters.push_back({e > 0 ? DieudonneLetter::F : DieudonneLetter::V, {}});
    w.summands.push_back(std::move(p));
  }
  return w;
}

} // namespace crys
