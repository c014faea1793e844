#include <random>

#include <gtest/gtest.h>

#include "crys/errors.hpp"
#include "crys/homology/chain_complex.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/homotopy.hpp"
#include "crys/homology/kernels.hpp"
#include "crys/homology/kunneth.hpp"
#include "crys/homology/smith.hpp"
#include "crys/homology/subquotient.hpp"
#include "crys/homology/tower.hpp"

using namespace crys;

namespace {

IntMatrix random_matrix(std::mt19937_64 &rng, int r, int c, int lo, int hi, double density = 1.0) {
  std::uniform_int_distribution<int> v(lo, hi);
  std::uniform_real_distribution<double> u(0, 1);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (u(rng) < density)
        m(i, j) = v(rng);
  return m;
}

Integer det(IntMatrix m) {
  // fraction-free Bareiss elimination
  const int n = m.rows();
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int s = k + 1;
      while (s < n && m(s, k) == 0)
        ++s;
      if (s == n)
        return 0;
      m.swap_rows(k, s);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return n ? sign * m(n - 1, n - 1) : Integer(1);
}

void expect_smith_ok(const IntMatrix &m) {
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(m.rows()));
  EXPECT_EQ(s.V * s.V_inv, IntMatrix::identity(m.cols()));
  for (int i = 0; i < s.D.rows(); ++i)
    for (int j = 0; j < s.D.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
  auto f = s.invariant_factors();
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    EXPECT_EQ(f[i + 1] % f[i], 0);
  for (auto &x : f)
    EXPECT_GT(x, 0);
  EXPECT_EQ(f, smith_invariant_factors(m));
  EXPECT_EQ(f, invariant_factors(SparseIntMatrix::from_dense(m)));
  EXPECT_EQ(f, dense_invariant_factors(m));
  if (m.rows() == m.cols()) {
    EXPECT_EQ(abs(det(m)), abs(det(s.D)));
  }
}

// d_1 arbitrary, d_2 built from the kernel of d_1 so that d_1 d_2 = 0
ChainComplex random_complex(std::mt19937_64 &rng, int r0, int r1, int r2) {
  IntMatrix d1 = random_matrix(rng, r0, r1, -3, 3, 0.5);
  IntMatrix k = kernel_basis(d1);
  IntMatrix d2 = k * random_matrix(rng, k.cols(), r2, -2, 2);
  // scale some columns to create torsion
  for (int j = 0; j < d2.cols(); j += 2)
    for (int i = 0; i < d2.rows(); ++i)
      d2(i, j) *= 2;
  return ChainComplex::make(Grading::Homological, 0, {r0, r1, r2},
                            {{1, SparseIntMatrix::from_dense(d1)}, {2, SparseIntMatrix::from_dense(d2)}});
}

ChainComplex times_two() {
  return ChainComplex::make(Grading::Homological, 0, {1, 1}, {{1, SparseIntMatrix::from_dense(IntMatrix{{2}})}});
}

} // namespace

TEST(FinAbGroup, NormalForm) {
  auto g = FinAbGroup::from_orders({4, 6, 1});
  EXPECT_EQ(g.torsion(), (std::vector<Integer>{2, 12}));
  EXPECT_EQ(FinAbGroup::from_orders({2, 3}), FinAbGroup::cyclic(6));
  EXPECT_EQ(FinAbGroup::from_orders({0, 2}).free_rank(), 1);
  EXPECT_EQ(FinAbGroup::cyclic(4).tensor(FinAbGroup::cyclic(6)), FinAbGroup::cyclic(2));
  EXPECT_EQ(FinAbGroup::cyclic(4).tor(FinAbGroup::cyclic(8)), FinAbGroup::cyclic(4));
  EXPECT_EQ(FinAbGroup::free(1).tensor(FinAbGroup::cyclic(3)), FinAbGroup::cyclic(3));
  EXPECT_EQ(FinAbGroup::from_orders({2, 4}).torsion_subgroup_order(2), 4);
  EXPECT_EQ(FinAbGroup::from_orders({2, 4}).str(), "Z/2 + Z/4");
  EXPECT_EQ(FinAbGroup::zero().str(), "0");
}

TEST(Smith, Examples) {
  auto a = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(a.D, (IntMatrix{{1, 0}, {0, 6}}));
  auto z = smith_normal_form(IntMatrix(3, 2));
  EXPECT_TRUE(z.D.is_zero());
  EXPECT_EQ(z.rank, 0);
  auto b = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(b.D, (IntMatrix{{2, 0}, {0, 4}}));
}

TEST(Smith, FuzzAgainstDeterminantAndKernels) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 150; ++trial) {
    int r = dim(rng), c = trial % 3 == 0 ? r : dim(rng);
    expect_smith_ok(random_matrix(rng, r, c, -9, 9, trial % 2 ? 1.0 : 0.3));
  }
}

TEST(Smith, SparseKernelOnStructuredMatrices) {
  // block diagonal with torsion blocks and many unit pivots
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m = random_matrix(rng, 40, 50, -1, 1, 0.08);
    for (int i = 0; i < 5; ++i)
      m(i, i) = 2 * (i + 1);
    expect_smith_ok(m);
  }
}

TEST(Homology, MultiplicationByTwo) {
  auto h = homology(times_two());
  EXPECT_EQ(h[0], FinAbGroup::cyclic(2));
  EXPECT_EQ(h[1], FinAbGroup::zero());
  auto h4 = homology(times_two(), Coefficients::mod(4));
  EXPECT_EQ(h4[0], FinAbGroup::cyclic(2));
  EXPECT_EQ(h4[1], FinAbGroup::cyclic(2));
}

TEST(Homology, DegreeOutsideRangeFlagged) {
  int degs[] = {0, 5, -1};
  auto e = homology(times_two(), degs);
  EXPECT_EQ(e[0].status, DegreeStatus::Ok);
  EXPECT_EQ(e[1].status, DegreeStatus::OutOfRange);
  EXPECT_TRUE(e[1].group.is_zero());
  EXPECT_EQ(e[2].status, DegreeStatus::OutOfRange);
  EXPECT_THROW(homology_at(times_two(), 7), std::out_of_range);
}

TEST(Homology, DSquaredCheckedAtConstruction) {
  EXPECT_THROW(ChainComplex::make(Grading::Homological, 0, {1, 1, 1},
                                  {{1, SparseIntMatrix::from_dense(IntMatrix{{1}})},
                                   {2, SparseIntMatrix::from_dense(IntMatrix{{1}})}}),
               std::invalid_argument);
  EXPECT_THROW(ChainComplex::make(Grading::Homological, 0, {1, 2}, {{1, SparseIntMatrix::from_dense(IntMatrix{{1}})}}),
               std::invalid_argument);
}

TEST(Homology, UniversalCoefficientsAndReference) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_complex(rng, 3 + trial % 4, 6, 4 + trial % 3);
    auto hz = homology(c);
    EXPECT_EQ(hz, homology_reference(c));
    for (long q : {2L, 4L, 9L}) {
      auto hq = homology(c, Coefficients::mod(q));
      EXPECT_EQ(hq, homology_reference(c, Coefficients::mod(q)));
      for (int n = c.lo(); n <= c.hi(); ++n) {
        FinAbGroup expect = hz[n].mod(q);
        if (hz.count(n - 1))
          expect = expect.direct_sum(hz[n - 1].tor(FinAbGroup::cyclic(q)));
        EXPECT_EQ(hq[n], expect) << "degree " << n << " q " << q;
      }
    }
  }
}

TEST(Homology, ShiftAndRegrade) {
  std::mt19937_64 rng(5);
  auto c = random_complex(rng, 4, 5, 3);
  auto h = homology(c);
  auto hs = homology(c.shifted(3));
  for (auto &[n, g] : h)
    EXPECT_EQ(hs[n + 3], g);
  auto hr = homology(c.regraded());
  for (auto &[n, g] : h)
    EXPECT_EQ(hr[-n], g);
  auto hr4 = homology(c.regraded(), Coefficients::mod(4));
  auto h4 = homology(c, Coefficients::mod(4));
  for (auto &[n, g] : h4)
    EXPECT_EQ(hr4[-n], g);
}

TEST(Homology, SubquotientGenerators) {
  auto c = times_two();
  auto s = homology_subquotient(c, 0);
  EXPECT_EQ(s.group(), FinAbGroup::cyclic(2));
  std::vector<Integer> v{3};
  EXPECT_EQ(s.coordinates(v), (std::vector<Integer>{1}));
  // multiplication by 3 induces the identity on Z/2
  auto m = induced_map(s, s, IntMatrix{{3}});
  EXPECT_EQ(m, (IntMatrix{{1}}));
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto cc = random_complex(rng, 3, 6, 5);
    auto hz = homology(cc);
    for (int n = 0; n <= 2; ++n) {
      EXPECT_EQ(homology_subquotient(cc, n).group(), hz[n]);
      EXPECT_EQ(homology_subquotient(cc, n, 4).group(), homology(cc, Coefficients::mod(4))[n]);
    }
  }
}

TEST(Kunneth, UnitAndCyclicProducts) {
  GradedGroup z2{{0, FinAbGroup::free(1)}, {1, FinAbGroup::cyclic(2)}, {3, FinAbGroup::cyclic(2)}};
  GradedGroup z3{{0, FinAbGroup::free(1)}, {1, FinAbGroup::cyclic(3)}, {3, FinAbGroup::cyclic(3)}};
  GradedGroup unit{{0, FinAbGroup::free(1)}};
  for (int n = 0; n <= 3; ++n)
    EXPECT_EQ(kunneth(z2, unit, n), z2.count(n) ? z2[n] : FinAbGroup::zero());
  EXPECT_EQ(kunneth(z2, z3, 1), FinAbGroup::cyclic(6));
  EXPECT_EQ(kunneth(z2, z2, 2), FinAbGroup::cyclic(2));
}

TEST(Homotopy, PassAndWitness) {
  auto c = ChainComplex::make(Grading::Homological, 0, {1, 1}, {{1, SparseIntMatrix::from_dense(IntMatrix{{1}})}});
  ChainMap id{{0, IntMatrix{{1}}}, {1, IntMatrix{{1}}}};
  EXPECT_TRUE(verify_homotopy(c, id, id, {}).pass);
  ChainMap h{{0, IntMatrix{{1}}}};
  EXPECT_TRUE(verify_homotopy(c, id, {}, h).pass);
  ChainMap bad{{0, IntMatrix{{2}}}};
  auto r = verify_homotopy(c, id, {}, bad);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->degree, 0);
  EXPECT_EQ(r.witness->expected, 1);
  EXPECT_EQ(r.witness->actual, 2);
  // modulo 1 everything agrees
  EXPECT_TRUE(verify_homotopy(c, id, {}, bad, 1).pass);
  EXPECT_THROW(verify_homotopy(c, id, {}, ChainMap{{0, IntMatrix{{1, 1}}}}), std::invalid_argument);
}

TEST(Tower, ConstantZeroAndReduction) {
  Tower constant;
  for (int n = 0; n < 5; ++n)
    constant.levels.push_back(FinAbGroup::from_orders({2, 4}));
  for (int n = 0; n < 4; ++n)
    constant.transitions.push_back(IntMatrix::identity(2));
  auto lc = tower_limit(constant);
  EXPECT_EQ(lc.limit, FinAbGroup::from_orders({2, 4}));
  EXPECT_TRUE(lc.lim1.is_zero());

  Tower zero;
  for (int n = 0; n < 5; ++n)
    zero.levels.push_back(FinAbGroup::cyclic(3));
  for (int n = 0; n < 4; ++n)
    zero.transitions.push_back(IntMatrix{{3}});
  EXPECT_TRUE(tower_limit(zero).limit.is_zero());

  // Z/p^min(n,N), reduction maps, N = 2
  const int p = 3, N = 2;
  Tower red;
  red.first_index = 1;
  for (int n = 1; n <= N + 3; ++n) {
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, std::min(n, N));
    red.levels.push_back(FinAbGroup::cyclic(q));
  }
  for (int n = 1; n < N + 3; ++n)
    red.transitions.push_back(IntMatrix{{1}});
  auto lr = tower_limit(red);
  EXPECT_EQ(lr.limit, FinAbGroup::cyclic(9));
  EXPECT_EQ(lr.stable_from, N + 3 - 3);

  // multiplication by 2 on Z/8: each level is eventually hit only by zero
  Tower prozero;
  for (int n = 0; n < 8; ++n)
    prozero.levels.push_back(FinAbGroup::cyclic(8));
  for (int n = 0; n < 7; ++n)
    prozero.transitions.push_back(IntMatrix{{2}});
  auto lz = tower_limit(prozero);
  EXPECT_TRUE(lz.limit.is_zero());
  EXPECT_EQ(lz.stable_from, 1);
  Tower prozero_short = prozero;
  prozero_short.levels.resize(5);
  prozero_short.transitions.resize(4);
  EXPECT_THROW(tower_limit(prozero_short), BoundExceeded);

  // reductions Z/p^{n+1} -> Z/p^n never stabilize
  Tower grow;
  for (int n = 1; n <= 5; ++n)
    grow.levels.push_back(FinAbGroup::cyclic(Integer(1) << n));
  for (int n = 1; n < 5; ++n)
    grow.transitions.push_back(IntMatrix{{1}});
  EXPECT_THROW(tower_limit(grow), BoundExceeded);
  Tower shortt;
  shortt.levels = {FinAbGroup::cyclic(2)};
  EXPECT_THROW(tower_limit(shortt), BoundExceeded);
  Tower badmap;
  badmap.levels = {FinAbGroup::cyclic(4), FinAbGroup::cyclic(2)};
  badmap.transitions = {IntMatrix{{1}}};
  EXPECT_THROW(tower_limit(badmap), std::invalid_argument);
}
