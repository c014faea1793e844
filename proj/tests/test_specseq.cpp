#include <gtest/gtest.h>

#include <random>

#include "crys/barstack/bar.hpp"
#include "crys/homology/homology.hpp"
#include "crys/specseq/contraction.hpp"
#include "crys/specseq/cosimplicial.hpp"
#include "crys/specseq/e1_row.hpp"
#include "crys/specseq/multilinear.hpp"
#include "crys/specseq/spectral_sequence.hpp"

using namespace crys;

namespace {

IntMatrix random_matrix(std::mt19937 &rng, int rows, int cols) {
  std::uniform_int_distribution<int> dist(-3, 3);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = dist(rng);
  return m;
}

// cofactor expansion along the first row
Integer determinant(const IntMatrix &m) {
  const int n = m.rows();
  if (n == 0)
    return 1;
  Integer det = 0;
  for (int c = 0; c < n; ++c) {
    std::vector<int> rows, cols;
    for (int i = 1; i < n; ++i)
      rows.push_back(i);
    for (int j = 0; j < n; ++j)
      if (j != c)
        cols.push_back(j);
    IntMatrix minor = m.rows_subset(rows).columns(cols);
    det += (c % 2 ? -1 : 1) * m(0, c) * determinant(minor);
  }
  return det;
}

} // namespace

TEST(Multilinear, BasisEnumeration) {
  EXPECT_EQ(increasing_tuples(5, 2).size(), 10u);
  EXPECT_EQ(nondecreasing_tuples(3, 2).size(), 6u);
  auto inc = increasing_tuples(6, 3);
  for (std::size_t k = 0; k < inc.size(); ++k)
    EXPECT_EQ(increasing_rank(inc[k], 6), static_cast<std::int64_t>(k));
  auto nd = nondecreasing_tuples(4, 3);
  for (std::size_t k = 0; k < nd.size(); ++k)
    EXPECT_EQ(nondecreasing_rank(nd[k], 4), static_cast<std::int64_t>(k));
}

TEST(Multilinear, ExteriorPowerIsFunctorialWithDeterminantOnTop) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    IntMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    EXPECT_EQ(exterior_power(a, 1), a);
    EXPECT_EQ(exterior_power(a, 0), IntMatrix::identity(1));
    for (int j = 0; j <= n; ++j)
      EXPECT_EQ(exterior_power(a * b, j), exterior_power(a, j) * exterior_power(b, j));
    IntMatrix top = exterior_power(a, n);
    ASSERT_EQ(top.rows(), 1);
    EXPECT_EQ(top(0, 0), determinant(a));
  }
}

TEST(Multilinear, SymmetricPowerIsFunctorial) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    IntMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    EXPECT_EQ(symmetric_power(a, 1), a);
    for (int j = 0; j <= 3; ++j)
      EXPECT_EQ(symmetric_power(a * b, j), symmetric_power(a, j) * symmetric_power(b, j));
  }
  // diag(2, 3) on monomials x^2, xy, y^2
  IntMatrix d{{2, 0}, {0, 3}};
  EXPECT_EQ(symmetric_power(d, 2), (IntMatrix{{4, 0, 0}, {0, 6, 0}, {0, 0, 9}}));
}

TEST(Multilinear, SymmetricMultiplicationIsCommutative) {
  const int n = 3;
  IntMatrix m11 = symmetric_multiplication(n, 1, 1);
  // swapping the tensor factors must not change the product
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      EXPECT_EQ(m11.column(i * n + k), m11.column(k * n + i));
  IntMatrix m12 = symmetric_multiplication(n, 1, 2), m21 = symmetric_multiplication(n, 2, 1);
  const int s2 = 6;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < s2; ++k)
      EXPECT_EQ(m12.column(i * s2 + k), m21.column(k * n + i));
}

TEST(Cosimplicial, PrimitiveAndExteriorPowersSatisfyIdentities) {
  for (int r = 1; r <= 3; ++r)
    for (int j = 0; j <= 3; ++j)
      EXPECT_NO_THROW(CosimplicialModule::exterior_power(CosimplicialModule::primitive(r, 5), j));
}

TEST(Cosimplicial, BrokenIdentityReportsWitness) {
  auto good = CosimplicialModule::primitive(1, 3);
  std::vector<std::vector<SparseIntMatrix>> cof(4);
  for (int i = 1; i <= 3; ++i)
    for (int k = 0; k <= i; ++k)
      cof[i].push_back(good.coface(i, k));
  cof[3][1] = SparseIntMatrix(3, 2);
  try {
    CosimplicialModule bad({0, 1, 2, 3}, cof);
    FAIL() << "expected an identity violation";
  } catch (const CosimplicialIdentityError &e) {
    EXPECT_EQ(e.level, 3);
    EXPECT_LT(e.k, e.l);
  }
}

TEST(Cosimplicial, ConstantModuleHasCohomologyInDegreeZero) {
  auto c = alternating_face_complex(CosimplicialModule::constant(6));
  auto h = homology(c, Coefficients::witt(2, 3));
  for (int n = 0; n <= 5; ++n)
    EXPECT_EQ(h.at(n), n == 0 ? FinAbGroup::from_orders({8}) : FinAbGroup::zero()) << n;
}

TEST(Cosimplicial, GroupCochainsAreDualToBarComplex) {
  for (auto g : {FinAbGroup::from_orders({4}), FinAbGroup::from_orders({2, 2}), FinAbGroup::from_orders({3})}) {
    auto c = alternating_face_complex(CosimplicialModule::group_cochains(g, 4));
    auto bar = bar_complex(g, 4);
    for (int n = 0; n < 4; ++n)
      EXPECT_EQ(c.outgoing(n), bar.outgoing(n + 1).transpose()) << g.str() << " degree " << n;
  }
}

TEST(E1Row, FirstDifferentialVanishesAndLowDegreesMatch) {
  auto row = e1_row(1, 1, 4);
  EXPECT_TRUE(row.outgoing(1).is_zero());
  EXPECT_EQ(row.outgoing(2).to_dense(), (IntMatrix{{-1, 0}, {0, 0}, {0, 1}}));
  EXPECT_EQ(row.outgoing(3).to_dense(), (IntMatrix{{0, 0, 0}, {0, 1, 0}, {0, 1, 0}, {0, 0, 0}}));
}

TEST(E1Row, RowZeroIsConstantAndRowOneIsH1) {
  auto h0 = homology(e1_row(2, 0, 5), Coefficients::witt(2, 2));
  auto h1 = homology(e1_row(2, 1, 5), Coefficients::witt(2, 2));
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(h0.at(n), n == 0 ? FinAbGroup::from_orders({4}) : FinAbGroup::zero());
    EXPECT_EQ(h1.at(n), n == 1 ? FinAbGroup::from_orders({4, 4}) : FinAbGroup::zero());
  }
}

TEST(E1Row, EndomorphismIsAChainMap) {
  IntMatrix f{{0, 1}, {2, 0}};
  for (int j = 0; j <= 2; ++j) {
    auto row = e1_row(2, j, 4);
    auto fm = e1_row_endomorphism(f, j, 4);
    for (int n = 0; n < 5; ++n)
      EXPECT_EQ(row.outgoing(n) * fm.at(n), fm.at(n + 1) * row.outgoing(n)) << j << " " << n;
  }
}

TEST(Contraction, LowDegreeFormulas) {
  auto h = hom_contraction(1, 4);
  EXPECT_EQ(h.at(3), (IntMatrix{{-1, 0, 0}, {0, 0, 1}}));
  EXPECT_EQ(h.at(4), (IntMatrix{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}));
  auto d = hom_complex(1, 4);
  // h3 d2 = id on level 2
  EXPECT_EQ(h.at(3) * d.outgoing(2).to_dense(), IntMatrix::identity(2));
  // d2 h3 + h4 d3 = id on level 3
  EXPECT_EQ(d.outgoing(2).to_dense() * h.at(3) + h.at(4) * d.outgoing(3).to_dense(), IntMatrix::identity(3));
}

TEST(Contraction, FullReportThroughDegreeEight) {
  for (int rank = 1; rank <= 4; ++rank)
    for (Integer q : {Integer(0), Integer(2), Integer(4), Integer(8), Integer(27)}) {
      auto rep = hom_complex_and_contraction(rank, 8, q);
      EXPECT_TRUE(rep.pass) << rank << " " << q << ": " << rep.message;
      EXPECT_TRUE(rep.mismatched_degrees.empty());
    }
}

TEST(Decalage, SymmetricPowerInDegreeJ) {
  auto rep = decalage_check(2, 2, 5, Coefficients::witt(2, 2));
  EXPECT_TRUE(rep.pass) << rep.message;
  EXPECT_EQ(rep.cohomology.at(2), FinAbGroup::from_orders({4, 4, 4}));
  for (int rank : {1, 2, 4})
    for (int j = 0; j <= 3; ++j) {
      auto r = decalage_check(rank, j, j + 2, Coefficients::witt(3, 2));
      EXPECT_TRUE(r.pass) << rank << " " << j << ": " << r.message;
    }
  EXPECT_TRUE(decalage_check(4, 1, 6, Coefficients::witt(2, 1)).pass);
}

TEST(Decalage, HoldsIntegrally) {
  for (int rank : {1, 2, 3})
    for (int j = 1; j <= 3; ++j) {
      auto r = decalage_check(rank, j, j + 2, Coefficients::integers());
      EXPECT_TRUE(r.pass) << rank << " " << j << ": " << r.message;
    }
}

namespace {

// x in (0,1), y in (1,1), z in (1,0), w in (2,0): d_h x = y, d_v z = y, d_h z = w.
// The zigzag x -> y <- z -> w makes d_2 : E_2^{0,1} -> E_2^{2,0} an isomorphism.
DoubleComplex zigzag() {
  std::vector<std::vector<int>> ranks{{0, 1}, {1, 1}, {1, 0}};
  std::map<DoubleComplex::Index, IntMatrix> h{{{0, 1}, IntMatrix{{1}}}, {{1, 0}, IntMatrix{{1}}}};
  std::map<DoubleComplex::Index, IntMatrix> v{{{1, 0}, IntMatrix{{1}}}};
  return DoubleComplex(ranks, h, v);
}

// E_1 rows of the zigzag: vertical cohomology is x at (0,1) and w at (2,0)
std::vector<ChainComplex> zigzag_rows() {
  std::vector<ChainComplex> rows;
  rows.push_back(ChainComplex::make(Grading::Cohomological, 0, {0, 0, 1, 0}, {}));
  rows.push_back(ChainComplex::make(Grading::Cohomological, 0, {1, 0, 0}, {}));
  for (int j = 2; j <= 4; ++j)
    rows.push_back(zero_row(4));
  return rows;
}

} // namespace

TEST(SpectralSequence, DoubleComplexValidation) {
  std::vector<std::vector<int>> ranks{{1, 1}, {1, 1}};
  std::map<DoubleComplex::Index, IntMatrix> h{{{0, 0}, IntMatrix{{1}}}, {{0, 1}, IntMatrix{{1}}}};
  std::map<DoubleComplex::Index, IntMatrix> v{{{0, 0}, IntMatrix{{1}}}, {{1, 0}, IntMatrix{{1}}}};
  // commuting square, not anticommuting
  EXPECT_THROW(DoubleComplex(ranks, h, v), std::invalid_argument);
  v[{1, 0}] = IntMatrix{{-1}};
  EXPECT_NO_THROW(DoubleComplex(ranks, h, v));
  std::map<DoubleComplex::Index, IntMatrix> bad{{{0, 0}, IntMatrix{{1, 0}}}};
  EXPECT_THROW(DoubleComplex(ranks, bad, {}), std::invalid_argument);
}

TEST(SpectralSequence, SyntheticNonzeroSecondDifferential) {
  auto dc = zigzag();
  // total complex: d(x) = y, d(z) = y + w, invertible, so total cohomology vanishes
  auto tot = dc.total();
  for (int n = 0; n <= 3; ++n)
    EXPECT_TRUE(homology_at(tot, n).is_zero()) << n;

  auto rows = zigzag_rows();
  auto without = run_spectral_sequence(rows, 2);
  EXPECT_FALSE(without.certificate.holds);
  ASSERT_TRUE(without.certificate.witness);
  EXPECT_EQ(without.certificate.witness->i, 0);
  EXPECT_EQ(without.certificate.witness->j, 1);
  EXPECT_EQ(without.certificate.witness->r, 2);
  EXPECT_FALSE(without.determined);
  EXPECT_EQ(without.status, "higher differentials undetermined");

  auto with = run_spectral_sequence(rows, 2, {}, &dc);
  ASSERT_TRUE(with.determined);
  ASSERT_GE(with.pages.size(), 2u);
  const auto &e2 = with.pages[0], &e3 = with.pages[1];
  EXPECT_EQ(e2.at(0, 1), FinAbGroup::free(1));
  EXPECT_EQ(e2.at(2, 0), FinAbGroup::free(1));
  EXPECT_TRUE(e3.entries.empty());
  for (int n = 0; n <= 2; ++n)
    EXPECT_TRUE(with.abutment.at(n).is_zero());
}

TEST(SpectralSequence, FilteredPagesWithCoefficients) {
  // same zigzag but the vertical map is 2: d_2 becomes multiplication by 2
  std::vector<std::vector<int>> ranks{{0, 1}, {1, 1}, {1, 0}};
  std::map<DoubleComplex::Index, IntMatrix> h{{{0, 1}, IntMatrix{{2}}}, {{1, 0}, IntMatrix{{1}}}};
  std::map<DoubleComplex::Index, IntMatrix> v{{{1, 0}, IntMatrix{{1}}}};
  DoubleComplex dc(ranks, h, v);
  auto e3 = filtered_page(dc, 3, 2);
  EXPECT_EQ(e3.at(2, 0), FinAbGroup::from_orders({2}));
  EXPECT_TRUE(e3.at(0, 1).is_zero());
  auto e3mod4 = filtered_page(dc, 3, 2, Coefficients::mod(4));
  EXPECT_EQ(e3mod4.at(2, 0), FinAbGroup::from_orders({2}));
  EXPECT_EQ(e3mod4.at(0, 1), FinAbGroup::from_orders({2}));
  auto tot = dc.total();
  EXPECT_EQ(homology_at(tot, 2, Coefficients::mod(4)), FinAbGroup::from_orders({2}));
  EXPECT_EQ(homology_at(tot, 1, Coefficients::mod(4)), FinAbGroup::from_orders({2}));
}

TEST(SpectralSequence, AbelianRowsDegenerateOnTheDiagonal) {
  const int bound = 6;
  std::vector<ChainComplex> rows;
  for (int j = 0; j <= bound + 1; ++j)
    rows.push_back(e1_row(2, j, bound + 1 - j));
  auto res = run_spectral_sequence(rows, bound, Coefficients::witt(2, 2));
  EXPECT_TRUE(res.certificate.holds) << res.certificate.str();
  ASSERT_TRUE(res.determined);
  for (int n = 0; n <= bound; ++n) {
    std::vector<Integer> orders(n % 2 ? 0 : n / 2 + 1, Integer(4));
    EXPECT_EQ(res.abutment.at(n), FinAbGroup::from_orders(orders)) << n;
  }
  for (const auto &[ij, g] : res.pages[0].entries)
    EXPECT_EQ(ij.first, ij.second);
}

TEST(SpectralSequence, SingleRowIsGroupCohomology) {
  auto g = FinAbGroup::from_orders({4});
  std::vector<ChainComplex> rows{alternating_face_complex(CosimplicialModule::group_cochains(g, 5))};
  for (int j = 1; j <= 4; ++j)
    rows.push_back(zero_row(4));
  auto res = run_spectral_sequence(rows, 3, Coefficients::witt(2, 3));
  EXPECT_TRUE(res.certificate.holds);
  EXPECT_EQ(res.abutment.at(0), FinAbGroup::from_orders({8}));
  EXPECT_EQ(res.abutment.at(1), FinAbGroup::from_orders({4}));
  EXPECT_EQ(res.abutment.at(2), FinAbGroup::from_orders({4}));
  EXPECT_EQ(res.abutment.at(3), FinAbGroup::from_orders({4}));
}

TEST(SpectralSequence, MissingRowsAreRejected) {
  std::vector<ChainComplex> rows{zero_row(3)};
  EXPECT_THROW(run_spectral_sequence(rows, 2), std::invalid_argument);
}
