#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "crys/exactalg/finite_field.hpp"
#include "crys/exactalg/witt.hpp"
#include "crys/exactalg/witt_poly.hpp"

using namespace crys;

namespace {

std::vector<std::uint16_t> codes(std::initializer_list<int> xs) {
  return {xs.begin(), xs.end()};
}

WittVector random_witt(const WittRingPtr &R, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> dist(0, R->field()->order() - 1);
  std::vector<std::uint16_t> c(R->length());
  for (auto &x : c)
    x = static_cast<std::uint16_t>(dist(rng));
  return R->from_coords(c);
}

} // namespace

TEST(FiniteField, DefaultModuliAreFields) {
  for (int p : {2, 3, 5, 7})
    for (int d = 1; d <= 3; ++d) {
      auto F = GaloisField::make(p, d);
      EXPECT_EQ(F->order(), static_cast<int>(std::pow(p, d)));
      // Frobenius applied d times is the identity and is a bijection
      for (int a = 0; a < F->order(); ++a) {
        std::uint16_t x = a;
        for (int i = 0; i < d; ++i)
          x = F->frobenius(x);
        EXPECT_EQ(x, a);
        EXPECT_EQ(F->inverse_frobenius(F->frobenius(a)), a);
      }
    }
}

TEST(FiniteField, RejectsReducibleModulusAndNonPrime) {
  EXPECT_THROW(GaloisField::make(2, std::vector<int>{1, 0, 1}), std::invalid_argument); // x^2+1=(x+1)^2
  EXPECT_THROW(GaloisField::make(4, 1), std::invalid_argument);
  EXPECT_THROW(GaloisField::make(11, 3), std::invalid_argument);
}

TEST(Ghost, Examples) {
  for (int p : {2, 3, 5}) {
    std::vector<Integer> x{7, 0, 0};
    auto w = ghost_components(x, p);
    Integer a = 7;
    EXPECT_EQ(w[0], a);
    Integer ap, app;
    mpz_pow_ui(ap.get_mpz_t(), a.get_mpz_t(), p);
    mpz_pow_ui(app.get_mpz_t(), a.get_mpz_t(), p * p);
    EXPECT_EQ(w[1], ap);
    EXPECT_EQ(w[2], app);
  }
  {
    std::vector<Integer> x{0, 1, 0};
    auto w = ghost_components(x, 2);
    EXPECT_EQ(w, (std::vector<Integer>{0, 2, 2}));
  }
  {
    std::vector<Integer> x{1, 1};
    auto w = ghost_components(x, 3);
    EXPECT_EQ(w, (std::vector<Integer>{1, 4}));
  }
  std::vector<Integer> x{1, 1};
  EXPECT_THROW(ghost_components(x, 4), std::invalid_argument);
}

// The cached polynomials must satisfy the ghost equations on integer inputs.
TEST(WittPolynomials, GhostAdditivityAndMultiplicativityOnIntegers) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int p : {2, 3, 5})
    for (int N = 1; N <= 3; ++N) {
      const auto &wp = witt_polynomials(p, N);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Integer> x(N), y(N), xy(2 * N);
        for (int i = 0; i < N; ++i) {
          x[i] = dist(rng);
          y[i] = dist(rng);
          xy[i] = x[i];
          xy[N + i] = y[i];
        }
        std::vector<Integer> s(N), m(N);
        for (int i = 0; i < N; ++i) {
          s[i] = wp.sum[i].evaluate(xy);
          m[i] = wp.product[i].evaluate(xy);
        }
        auto gx = ghost_components(x, p), gy = ghost_components(y, p);
        auto gs = ghost_components(s, p), gm = ghost_components(m, p);
        for (int i = 0; i < N; ++i) {
          EXPECT_EQ(gs[i], gx[i] + gy[i]);
          EXPECT_EQ(gm[i], gx[i] * gy[i]);
        }
      }
    }
}

TEST(Witt, AdditionExamples) {
  auto R = WittRing::make(3, 1, 2);
  // [1] + [2] = 1 + 8 = 9 = 0 in Z/9
  EXPECT_EQ(R->from_coords(codes({1, 0})) + R->from_coords(codes({2, 0})), R->zero());
  auto R2 = WittRing::make(2, 1, 2);
  EXPECT_EQ(R2->from_coords(codes({1, 0})) + R2->from_coords(codes({1, 0})), R2->from_coords(codes({0, 1})));
  auto w = R->from_coords(codes({2, 1}));
  EXPECT_EQ(w + R->zero(), w);
}

TEST(Witt, MultiplicationExamples) {
  for (int p : {2, 3, 5}) {
    auto R = WittRing::make(p, 1, 2);
    auto pv = R->from_coords(codes({0, 1}));
    EXPECT_EQ(pv * pv, R->zero());
    auto w = R->from_coords(codes({1, p - 1}));
    EXPECT_EQ(w * R->one(), w);
  }
  auto R = WittRing::make(3, 1, 2);
  auto two = R->from_coords(codes({2, 0}));
  EXPECT_EQ(two * two, R->from_coords(codes({1, 0})));
}

TEST(Witt, IntegerIsomorphismForPrimeField) {
  for (int p : {2, 3, 5})
    for (int N = 1; N <= 3; ++N) {
      auto R = WittRing::make(p, 1, N);
      long q = 1;
      for (int i = 0; i < N; ++i)
        q *= p;
      for (long a = 0; a < q; ++a) {
        auto wa = R->from_integer(a);
        EXPECT_EQ(wa.to_integer(), Integer(a));
        for (long b = 0; b < q; b += 3) {
          auto wb = R->from_integer(b);
          EXPECT_EQ((wa + wb).to_integer(), Integer((a + b) % q));
          EXPECT_EQ((wa * wb).to_integer(), Integer((a * b) % q));
        }
      }
    }
}

TEST(Witt, StructureMaps) {
  auto R = WittRing::make(2, 1, 3);
  auto one = R->one();
  EXPECT_EQ(one.verschiebung(), R->from_coords(codes({0, 1, 0})));
  EXPECT_EQ(R->from_integer(2) * one, R->from_coords(codes({0, 1, 0})));

  auto R4 = WittRing::make(2, 2, 3);
  for (int a = 0; a < 4; ++a) {
    auto t = R4->teichmuller(a);
    EXPECT_EQ(t.frobenius(), R4->teichmuller(R4->field()->frobenius(a)));
  }
  std::mt19937_64 rng(11);
  auto p = R4->from_integer(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto w = random_witt(R4, rng);
    EXPECT_EQ(w.verschiebung().frobenius(), p * w);
    EXPECT_EQ(w.frobenius().verschiebung(), p * w);
  }
}

TEST(Witt, FrobeniusVerschiebungExhaustive) {
  for (int d = 1; d <= 2; ++d)
    for (int N = 1; N <= 3; ++N) {
      auto R = WittRing::make(2, d, N);
      auto p = R->from_integer(2);
      int q = R->field()->order(), total = 1;
      for (int i = 0; i < N; ++i)
        total *= q;
      for (int code = 0; code < total; ++code) {
        std::vector<std::uint16_t> c(N);
        int x = code;
        for (auto &ci : c) {
          ci = x % q;
          x /= q;
        }
        auto w = R->from_coords(c);
        EXPECT_EQ(w.frobenius().verschiebung(), p * w);
        EXPECT_EQ(w.verschiebung().frobenius(), p * w);
      }
    }
}

TEST(Witt, SigmaIsRingAutomorphism) {
  std::mt19937_64 rng(3);
  auto R = WittRing::make(3, 2, 3);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_witt(R, rng), b = random_witt(R, rng);
    EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
    EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
    EXPECT_EQ(a.sigma_power(2), a);
  }
  auto R1 = WittRing::make(5, 1, 3);
  auto a = random_witt(R1, rng);
  EXPECT_EQ(a.frobenius(), a);
}

TEST(Witt, InverseAndDivision) {
  std::mt19937_64 rng(5);
  for (int p : {2, 3}) {
    auto R = WittRing::make(p, 2, 4);
    for (int trial = 0; trial < 30; ++trial) {
      auto a = random_witt(R, rng);
      if (a.is_unit())
        EXPECT_EQ(a * a.inverse(), R->one());
      int v = a.valuation();
      if (v < R->length()) {
        auto y = a.divide_by_p_power(v);
        auto pv = R->one();
        for (int i = 0; i < v; ++i)
          pv = pv * R->from_integer(p);
        EXPECT_EQ(pv * y, a);
      }
      EXPECT_EQ(a + a.negate(), R->zero());
    }
  }
}

TEST(Witt, MismatchedParametersRejected) {
  auto A = WittRing::make(2, 1, 2), B = WittRing::make(2, 1, 3), C = WittRing::make(3, 1, 2);
  EXPECT_THROW(A->one() + B->one(), std::invalid_argument);
  EXPECT_THROW(A->one() * C->one(), std::invalid_argument);
}

TEST(Witt, GaloisRingArithmeticMatchesUniversalPolynomials) {
  std::mt19937_64 rng(99);
  for (int p : {2, 3, 5})
    for (int d = 1; d <= 2; ++d)
      for (int N = 1; N <= 4; ++N) {
        auto R = WittRing::make(p, d, N);
        for (int trial = 0; trial < 30; ++trial) {
          auto u = random_witt(R, rng), v = random_witt(R, rng);
          ASSERT_EQ(R->add(u.coords(), v.coords()), R->polynomial_add(u.coords(), v.coords()));
          ASSERT_EQ(R->mul(u.coords(), v.coords()), R->polynomial_mul(u.coords(), v.coords()));
          ASSERT_EQ(R->from_galois(R->to_galois(u.coords())), u.coords());
          ASSERT_EQ(u + u.negate(), R->zero());
        }
      }
}

TEST(Witt, LongTruncationsStayConsistent) {
  // beyond the range where universal polynomials are practical
  std::mt19937_64 rng(5);
  for (int p : {2, 3}) {
    auto R = WittRing::make(p, 1, 8);
    for (int trial = 0; trial < 50; ++trial) {
      auto u = random_witt(R, rng), v = random_witt(R, rng);
      Integer mod;
      mpz_ui_pow_ui(mod.get_mpz_t(), p, 8);
      EXPECT_EQ((u * v).to_integer(), (u.to_integer() * v.to_integer()) % mod);
      EXPECT_EQ((u + v).to_integer(), (u.to_integer() + v.to_integer()) % mod);
      EXPECT_EQ(u.frobenius().verschiebung(), R->from_integer(p) * u);
    }
  }
}
