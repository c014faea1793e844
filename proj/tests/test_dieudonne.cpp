#include <random>

#include <gtest/gtest.h>

#include "crys/dieudonne/catalog.hpp"
#include "crys/dieudonne/module.hpp"
#include "crys/dieudonne/ring.hpp"

using namespace crys;

namespace {

// Reduces one product letter by letter, keeping a single monomial a X^e.
// Written independently of DieudonneElement multiplication.
DieudonneElement reference_reduce(const DieudonneWord &w, const WittRingPtr &R) {
  std::map<int, WittVector> acc;
  const auto p = R->from_integer(R->p());
  for (const auto &prod : w.summands) {
    WittVector a = R->from_integer(prod.multiplicity);
    int e = 0;
    for (const auto &l : prod.letters) {
      if (l.kind == DieudonneLetter::Scalar) {
        a = a * R->from_coords(l.coords).sigma_power(e);
      } else if (l.kind == DieudonneLetter::F) {
        if (e < 0)
          a = a * p;
        ++e;
      } else {
        if (e > 0)
          a = a * p;
        --e;
      }
    }
    auto [it, fresh] = acc.emplace(e, a);
    if (!fresh)
      it->second = it->second + a;
  }
  DieudonneElement x(R);
  for (const auto &[e, a] : acc)
    x = x + DieudonneElement::monomial(a, e);
  return x;
}

DieudonneWord random_word(const WittRingPtr &R, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> len(0, 6), kind(0, 2), code(0, R->field()->order() - 1),
      mult(-3, 3), terms(1, 3);
  DieudonneWord w;
  const int t = terms(rng);
  for (int s = 0; s < t; ++s) {
    DieudonneWord::Product p;
    p.multiplicity = mult(rng);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int k = kind(rng);
      if (k == 2) {
        std::vector<std::uint16_t> c(R->length());
        for (auto &x : c)
          x = static_cast<std::uint16_t>(code(rng));
        p.letters.push_back({DieudonneLetter::Scalar, c});
      } else {
        p.letters.push_back({k == 0 ? DieudonneLetter::F : DieudonneLetter::V, {}});
      }
    }
    w.summands.push_back(std::move(p));
  }
  return w;
}

DieudonneWord concat(const DieudonneWord &a, const DieudonneWord &b) {
  DieudonneWord r;
  for (const auto &x : a.summands)
    for (const auto &y : b.summands) {
      DieudonneWord::Product p{x.multiplicity * y.multiplicity, x.letters};
      p.letters.insert(p.letters.end(), y.letters.begin(), y.letters.end());
      r.summands.push_back(p);
    }
  return r;
}

// Applies a word to a module vector letter by letter (rightmost letter first).
std::vector<WittVector> act_letterwise(const DieudonneModule &M, const DieudonneWord &w,
                                       const std::vector<WittVector> &v) {
  const auto &R = M.ring();
  std::vector<WittVector> out(v.size(), R->zero());
  for (const auto &prod : w.summands) {
    auto x = M.normalize(v);
    for (auto it = prod.letters.rbegin(); it != prod.letters.rend(); ++it) {
      if (it->kind == DieudonneLetter::F) {
        x = M.apply_frobenius(x);
      } else if (it->kind == DieudonneLetter::V) {
        x = M.apply_verschiebung(x);
      } else {
        for (auto &c : x)
          c = R->from_coords(it->coords) * c;
        x = M.normalize(x);
      }
    }
    const auto m = R->from_integer(prod.multiplicity);
    for (std::size_t i = 0; i < x.size(); ++i)
      out[i] = out[i] + m * x[i];
  }
  return M.normalize(out);
}

DieudonneModule test_module(const WittRingPtr &R) {
  auto c = std::get<DieudonneModule>(catalog("constant(" + std::to_string(R->p()) + "^" +
                                                 std::to_string(R->length()) + ")",
                                             R));
  auto mu = std::get<DieudonneModule>(catalog("mu(" + std::to_string(R->p()) + "^" +
                                                  std::to_string(R->length()) + ")",
                                              R));
  auto m = c.direct_sum(mu);
  if (R->length() >= 3)
    m = m.direct_sum(quotient_module(1, 2, R)).direct_sum(quotient_module(2, 1, R));
  return m;
}

} // namespace

TEST(DieudonneRing, DefiningRelations) {
  auto R = WittRing::make(2, 1, 3);
  EXPECT_EQ(canonical_form("F*V", R), DieudonneElement::scalar(R->from_integer(2)));
  EXPECT_EQ(canonical_form("V F", R), DieudonneElement::scalar(R->from_integer(2)));
  // p = V(1) inside W_N(F_p)
  EXPECT_EQ(canonical_form("F*V", R).coefficient(0), R->one().verschiebung());
  EXPECT_EQ(canonical_form("(F+V)^2", R), canonical_form("F^2 + 2p + V^2", R));
  EXPECT_EQ(canonical_form("(F+V)^2", R).str(), "V^2 + 4 + F^2");

  auto R4 = WittRing::make(2, 2, 2);
  // code 2 is the class of x in F_4, not fixed by Frobenius
  auto c = R4->teichmuller(2);
  ASSERT_NE(c.frobenius(), c);
  EXPECT_EQ(canonical_form("F*[2]", R4), DieudonneElement::monomial(c.frobenius(), 1));
  // c V = V sigma(c)
  EXPECT_EQ(canonical_form("[2]*V", R4), DieudonneElement::monomial(c, -1));
  const auto sc = std::to_string(R4->field()->frobenius(2));
  EXPECT_EQ(canonical_form("V*[" + sc + "]", R4), canonical_form("[2]*V", R4));
  EXPECT_EQ(canonical_form("V*[2]", R4), DieudonneElement::monomial(c.inverse_frobenius(), -1));
  EXPECT_EQ(canonical_form("(F+V)^2", R4), canonical_form("F^2 + 2p + V^2", R4));
  // p^N = 0 kills the mixed terms
  EXPECT_EQ(canonical_form("F^2 V^2", R4), DieudonneElement(R4));
}

TEST(DieudonneRing, ParserRejectsGarbage) {
  auto R = WittRing::make(3, 1, 2);
  EXPECT_THROW(canonical_form("F+", R), std::invalid_argument);
  EXPECT_THROW(canonical_form("F*(V", R), std::invalid_argument);
  EXPECT_THROW(canonical_form("[5]", R), std::invalid_argument);
  EXPECT_THROW(canonical_form("[1,1,1]", R), std::invalid_argument);
  EXPECT_THROW(canonical_form("Q", R), std::invalid_argument);
  EXPECT_EQ(canonical_form("-F + F", R), DieudonneElement(R));
  EXPECT_EQ(canonical_form("[1,1]", R), DieudonneElement::scalar(R->from_coords({1, 1})));
}

TEST(DieudonneRing, RandomWordsReduceIdempotentlyAndMultiplicatively) {
  std::mt19937_64 rng(20240611);
  for (auto R : {WittRing::make(2, 1, 3), WittRing::make(3, 2, 2)}) {
    const auto M = test_module(R);
    for (int it = 0; it < 250; ++it) {
      auto a = random_word(R, rng), b = random_word(R, rng);
      auto ca = canonical_form(a, R), cb = canonical_form(b, R);
      ASSERT_EQ(ca, reference_reduce(a, R));
      ASSERT_EQ(canonical_form(to_word(ca), R), ca);
      ASSERT_EQ(canonical_form(concat(a, b), R), ca * cb);
      DieudonneWord sum = a;
      sum.summands.insert(sum.summands.end(), b.summands.begin(), b.summands.end());
      ASSERT_EQ(canonical_form(sum, R), ca + cb);
      for (int g = 0; g < M.num_generators(); ++g)
        ASSERT_EQ(M.apply(ca, M.generator(g)), act_letterwise(M, a, M.generator(g)));
    }
  }
}

TEST(DieudonneModule, QuotientModuleExamples) {
  auto R = WittRing::make(3, 1, 2);
  auto a = quotient_module(1, 1, R);
  EXPECT_EQ(w_length(a), 1);
  EXPECT_TRUE(a.frobenius().is_zero());
  EXPECT_TRUE(a.verschiebung().is_zero());
  auto R3 = WittRing::make(3, 1, 3);
  EXPECT_EQ(w_length(quotient_module(1, 2, R3)), 2);
  EXPECT_EQ(w_length(quotient_module(2, 2, WittRing::make(3, 1, 4))), 4);
  try {
    quotient_module(2, 2, R3);
    FAIL();
  } catch (const std::invalid_argument &e) {
    EXPECT_NE(std::string(e.what()).find("alias"), std::string::npos);
  }
}

TEST(DieudonneModule, LengthIsProductOfRelations) {
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) {
        auto R = WittRing::make(p, 1, n + m + 1);
        auto M = quotient_module(m, n, R);
        EXPECT_EQ(w_length(M), n * m);
        EXPECT_EQ(presentation_length(m, n, R), n * m);
        EXPECT_TRUE(quotient_module_stable(m, n, R));
        EXPECT_TRUE(check_dieudonne_axioms(M).pass) << check_dieudonne_axioms(M).witness;
      }
  auto R9 = WittRing::make(3, 2, 4);
  EXPECT_TRUE(check_dieudonne_axioms(quotient_module(2, 2, R9)).pass);
}

TEST(DieudonneModule, AxiomFailureHasWitness) {
  auto R = WittRing::make(3, 1, 2);
  DieudonneModule bad(R, {2}, WittMatrix::identity(R, 1), WittMatrix::identity(R, 1));
  auto rep = check_dieudonne_axioms(bad);
  EXPECT_FALSE(rep.pass);
  EXPECT_NE(rep.witness.find("FV - p"), std::string::npos);
  // F sends the order-2 generator onto the order-8 one
  auto R2 = WittRing::make(2, 1, 3);
  WittMatrix f = WittMatrix::from_integers(R2, {{0, 1}, {0, 0}});
  DieudonneModule leaky(R2, {3, 1}, f, WittMatrix(R2, 2, 2));
  auto rep2 = check_dieudonne_axioms(leaky);
  EXPECT_FALSE(rep2.pass);
  EXPECT_NE(rep2.witness.find("relation"), std::string::npos);
}

TEST(DieudonneModule, SemilinearityOverExtensionField) {
  auto R = WittRing::make(2, 2, 3);
  auto M = std::get<DieudonneModule>(catalog("constant(2^3)", R));
  auto c = R->teichmuller(2);
  ASSERT_NE(c.frobenius(), c);
  std::vector<WittVector> cm{c};
  auto lhs = M.apply_frobenius(cm);
  auto rhs = M.normalize({c.frobenius() * M.apply_frobenius(M.generator(0))[0]});
  EXPECT_EQ(lhs, rhs);
  EXPECT_NE(lhs, M.normalize({c * M.apply_frobenius(M.generator(0))[0]}));
  EXPECT_TRUE(check_dieudonne_axioms(M).pass);
}

TEST(DieudonneCatalog, FiniteEntries) {
  for (int p : {2, 3, 5}) {
    auto R = WittRing::make(p, 1, 4);
    for (int n = 1; n <= 3; ++n)
      for (std::string kind : {"constant", "mu"}) {
        auto name = kind + "(" + std::to_string(p) + "^" + std::to_string(n) + ")";
        auto M = std::get<DieudonneModule>(catalog(name, R));
        EXPECT_TRUE(check_dieudonne_axioms(M).pass) << name;
        EXPECT_EQ(w_length(M), n) << name;
        // p^length kills the module, p^(length-1) does not
        Integer q;
        mpz_ui_pow_ui(q.get_mpz_t(), p, n);
        EXPECT_TRUE(M.normalize({R->from_integer(q)})[0].is_zero());
        EXPECT_FALSE(M.normalize({R->from_integer(q / p)})[0].is_zero());
      }
    auto A = std::get<DieudonneModule>(catalog("alpha_p", R));
    EXPECT_EQ(w_length(A), 1);
    EXPECT_TRUE(A.frobenius().is_zero() && A.verschiebung().is_zero());
    auto Q = quotient_module(1, 1, R);
    EXPECT_EQ(A.exponents(), Q.exponents());
    EXPECT_EQ(A.frobenius(), Q.frobenius());
    auto W = std::get<DieudonneModule>(catalog("W(2,1)", R));
    EXPECT_EQ(w_length(W), 2);
  }
  auto R = WittRing::make(3, 1, 3);
  auto M = std::get<DieudonneModule>(catalog("Z/9", R));
  EXPECT_EQ(M.exponents(), std::vector<int>{2});
  auto S = M.direct_sum(std::get<DieudonneModule>(catalog("mu(3)", R)));
  EXPECT_EQ(w_length(S), 3);
  EXPECT_THROW(catalog("Z/6", R), std::invalid_argument);
  EXPECT_THROW(catalog("nonsense", R), std::invalid_argument);
}

TEST(DieudonneCatalog, PDivisibleEntries) {
  for (int N = 1; N <= 4; ++N) {
    auto R = WittRing::make(2, 1, N);
    auto q = std::get<PDivisibleModule>(catalog("Qp/Zp", R));
    EXPECT_EQ(q.height(), 1);
    EXPECT_TRUE(q.frobenius_cokernel().empty());
    EXPECT_TRUE(q.satisfies_pd_in_fd());
    auto mu = std::get<PDivisibleModule>(catalog("mu(p^inf)", R));
    EXPECT_EQ(mu.frobenius_cokernel(), std::vector<int>{1});
    EXPECT_TRUE(mu.satisfies_pd_in_fd());
    auto e = std::get<PDivisibleModule>(catalog("etale(2)", R));
    EXPECT_EQ(e.height(), 2);
    EXPECT_TRUE(e.satisfies_pd_in_fd());
  }
  auto R = WittRing::make(2, 1, 3);
  PDivisibleModule bad{WittMatrix::from_integers(R, {{4}})};
  EXPECT_FALSE(bad.satisfies_pd_in_fd());
  EXPECT_EQ(CatalogEntry::parse("(Qp/Zp)^2", 2).height, 2);
  EXPECT_EQ(CatalogEntry::parse("height_3_etale", 2).height, 3);
}
