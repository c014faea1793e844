#include "crys/specseq/spectral_sequence.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "crys/homology/subquotient.hpp"

namespace crys {

DoubleComplex::DoubleComplex(std::vector<std::vector<int>> ranks, std::map<Index, IntMatrix> h,
                             std::map<Index, IntMatrix> v)
    : ranks_(std::move(ranks)), horizontal_(std::move(h)), vertical_(std::move(v)) {
  for (const auto &col : ranks_)
    if (static_cast<int>(col.size()) != rows())
      throw std::invalid_argument("inconsistent grid shapes: ragged rank grid");
  auto check_shape = [&](const std::map<Index, IntMatrix> &maps, int di, int dj, const char *what) {
    for (const auto &[ij, m] : maps) {
      auto [i, j] = ij;
      if (m.rows() != rank(i + di, j + dj) || m.cols() != rank(i, j))
        throw std::invalid_argument(fmt::format("inconsistent grid shapes: {} map at ({}, {})", what, i, j));
    }
  };
  check_shape(horizontal_, 1, 0, "horizontal");
  check_shape(vertical_, 0, 1, "vertical");
  for (int i = 0; i < columns(); ++i)
    for (int j = 0; j < rows(); ++j) {
      if (!(horizontal(i + 1, j) * horizontal(i, j)).is_zero())
        throw std::invalid_argument(fmt::format("horizontal d^2 != 0 at ({}, {})", i, j));
      if (!(vertical(i, j + 1) * vertical(i, j)).is_zero())
        throw std::invalid_argument(fmt::format("vertical d^2 != 0 at ({}, {})", i, j));
      if (!(horizontal(i, j + 1) * vertical(i, j) + vertical(i + 1, j) * horizontal(i, j)).is_zero())
        throw std::invalid_argument(fmt::format("horizontal and vertical maps do not anticommute at ({}, {})", i, j));
    }
}

int DoubleComplex::rank(int i, int j) const {
  if (i < 0 || j < 0 || i >= columns() || j >= rows())
    return 0;
  return ranks_[i][j];
}

IntMatrix DoubleComplex::horizontal(int i, int j) const {
  auto it = horizontal_.find({i, j});
  return it == horizontal_.end() ? IntMatrix(rank(i + 1, j), rank(i, j)) : it->second;
}

IntMatrix DoubleComplex::vertical(int i, int j) const {
  auto it = vertical_.find({i, j});
  return it == vertical_.end() ? IntMatrix(rank(i, j + 1), rank(i, j)) : it->second;
}

namespace {

// offset of block (i, n - i) inside total degree n, or -1 if the block is empty
int block_offset(const DoubleComplex &c, int n, int i) {
  int off = 0;
  for (int a = 0; a < i; ++a)
    off += c.rank(a, n - a);
  return off;
}

int total_rank(const DoubleComplex &c, int n) {
  int r = 0;
  for (int i = 0; i <= n; ++i)
    r += c.rank(i, n - i);
  return r;
}

IntMatrix total_differential(const DoubleComplex &c, int n) {
  IntMatrix d(total_rank(c, n + 1), total_rank(c, n));
  for (int i = 0; i <= n; ++i) {
    const int j = n - i;
    if (!c.rank(i, j))
      continue;
    const int src = block_offset(c, n, i);
    auto place = [&](const IntMatrix &m, int ti) {
      const int dst = block_offset(c, n + 1, ti);
      for (int r = 0; r < m.rows(); ++r)
        for (int k = 0; k < m.cols(); ++k)
          d(dst + r, src + k) += m(r, k);
    };
    place(c.horizontal(i, j), i + 1);
    place(c.vertical(i, j), i);
  }
  return d;
}

} // namespace

ChainComplex DoubleComplex::total() const {
  const int top = std::max(0, columns() + rows() - 2);
  std::vector<int> ranks(top + 1);
  std::map<int, SparseIntMatrix> d;
  for (int n = 0; n <= top; ++n) {
    ranks[n] = total_rank(*this, n);
    if (n < top)
      d.emplace(n, SparseIntMatrix::from_dense(total_differential(*this, n)));
  }
  return ChainComplex::make(Grading::Cohomological, 0, std::move(ranks), std::move(d));
}

ChainComplex DoubleComplex::row(int j) const {
  std::vector<int> ranks(std::max(1, columns()));
  std::map<int, SparseIntMatrix> d;
  for (int i = 0; i < columns(); ++i) {
    ranks[i] = rank(i, j);
    if (i + 1 < columns())
      d.emplace(i, SparseIntMatrix::from_dense(horizontal(i, j)));
  }
  return ChainComplex::make(Grading::Cohomological, 0, std::move(ranks), std::move(d));
}

FinAbGroup SpectralSequencePage::at(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? FinAbGroup::zero() : it->second;
}

std::string DegenerationCertificate::str() const {
  if (holds)
    return fmt::format("degenerates at E2: {} nonzero sources, every d_r lands in a zero cell", sources_checked);
  if (witness)
    return fmt::format("no certificate: d_{} from ({}, {}) has nonzero source and target", witness->r, witness->i,
                       witness->j);
  return "no certificate";
}

ChainComplex zero_row(int top) {
  return ChainComplex::make(Grading::Cohomological, 0, std::vector<int>(top + 1, 0), {});
}

namespace {

// Lattices in total degree n, columns of ambient coordinates.
struct FiltrationContext {
  const DoubleComplex &c;
  Integer q;
  std::map<int, IntMatrix> diff; // total differential out of n

  const IntMatrix &d(int n) {
    auto it = diff.find(n);
    if (it == diff.end())
      it = diff.emplace(n, total_differential(c, n)).first;
    return it->second;
  }

  // F^p: coordinate vectors of the blocks with i >= p
  IntMatrix filtration(int n, int p) {
    const int dim = total_rank(c, n);
    const int start = block_offset(c, n, std::clamp(p, 0, n + 1));
    IntMatrix m(dim, dim - start);
    for (int k = start; k < dim; ++k)
      m(k, k - start) = 1;
    return m;
  }

  // Z_r^p in degree n: x in F^p with d x in F^{p+r} (+ qC)
  IntMatrix cycles(int n, int r, int p) {
    IntMatrix fp = filtration(n, p);
    if (r == 0 || fp.cols() == 0)
      return fp;
    IntMatrix target = filtration(n + 1, p + r);
    if (q != 0)
      target = IntMatrix::hcat(target, IntMatrix::scalar(total_rank(c, n + 1), q));
    IntMatrix a = d(n) * fp;
    return fp * preimage_basis(a, target);
  }

  FinAbGroup entry(int n, int r, int p) {
    IntMatrix num = cycles(n, r, p);
    if (num.cols() == 0)
      return FinAbGroup::zero();
    IntMatrix den = cycles(n, r - 1, p + 1);
    if (n > 0) {
      IntMatrix b = d(n - 1) * cycles(n - 1, r - 1, p - r + 1);
      // with coefficients the image is only in F^p modulo q; drop the low blocks
      const int start = block_offset(c, n, std::clamp(p, 0, n + 1));
      for (int k = 0; k < start; ++k)
        for (int col = 0; col < b.cols(); ++col)
          b(k, col) = 0;
      den = IntMatrix::hcat(den, b);
    }
    if (q != 0)
      den = IntMatrix::hcat(den, filtration(n, p).scaled(q));
    return Subquotient(num, den).group();
  }
};

} // namespace

SpectralSequencePage filtered_page(const DoubleComplex &c, int r, int max_total, const Coefficients &coeffs) {
  if (r < 1)
    throw std::invalid_argument("filtered pages start at r = 1");
  FiltrationContext ctx{c, coeffs.modulus, {}};
  SpectralSequencePage page;
  page.r = r;
  for (int n = 0; n <= max_total; ++n)
    for (int p = 0; p <= n; ++p) {
      if (!c.rank(p, n - p))
        continue;
      FinAbGroup g = ctx.entry(n, r, p);
      if (!g.is_zero())
        page.entries[{p, n - p}] = std::move(g);
    }
  return page;
}

SpectralSequenceResult run_spectral_sequence(const std::vector<ChainComplex> &rows, int max_total,
                                             const Coefficients &coeffs, const DoubleComplex *model) {
  if (max_total < 0)
    throw std::invalid_argument("max total degree must be >= 0");
  if (static_cast<int>(rows.size()) < max_total + 1)
    throw std::invalid_argument(fmt::format("inconsistent grid shapes: {} rows given, total degree {} needs rows 0..{}",
                                            rows.size(), max_total, max_total));
  for (int j = 0; j < static_cast<int>(rows.size()); ++j)
    if (rows[j].grading() != Grading::Cohomological)
      throw std::invalid_argument(fmt::format("inconsistent grid shapes: row {} is not a cochain complex", j));
  auto require = [&](int i, int j) {
    const auto &row = rows[j];
    if (i > row.hi() || !row.degree_valid(i))
      throw std::invalid_argument(fmt::format("inconsistent grid shapes: row {} is not valid in degree {}", j, i));
  };
  SpectralSequenceResult res;
  res.max_total = max_total;
  res.coeffs = coeffs;

  SpectralSequencePage e2;
  e2.r = 2;
  for (int j = 0; j <= max_total; ++j) {
    std::vector<int> degrees;
    for (int i = 0; i + j <= max_total; ++i) {
      require(i, j);
      degrees.push_back(i);
    }
    for (auto &e : homology(rows[j], degrees, coeffs))
      if (!e.group.is_zero())
        e2.entries[{e.degree, j}] = std::move(e.group);
  }
  // cells of total degree max_total + 1, computed only when some d_r lands there
  std::map<std::pair<int, int>, FinAbGroup> edge;
  auto cell = [&](int i, int j) -> FinAbGroup {
    if (i + j <= max_total)
      return e2.at(i, j);
    auto it = edge.find({i, j});
    if (it != edge.end())
      return it->second;
    if (j >= static_cast<int>(rows.size()))
      throw std::invalid_argument(fmt::format("inconsistent grid shapes: no row {} for target ({}, {})", j, i, j));
    require(i, j);
    return edge[{i, j}] = homology_at(rows[j], i, coeffs);
  };

  // the certificate: d_r out of every nonzero source of total degree <= max_total
  auto &cert = res.certificate;
  cert.holds = true;
  for (const auto &[ij, g] : e2.entries) {
    auto [i, j] = ij;
    ++cert.sources_checked;
    for (int r = 2; j - r + 1 >= 0; ++r)
      if (!cell(i + r, j - r + 1).is_zero()) {
        cert.holds = false;
        if (!cert.witness)
          cert.witness = DegeneracyWitness{i, j, r};
      }
  }
  res.pages.push_back(e2);

  if (model) {
    const auto check = filtered_page(*model, 2, max_total, coeffs);
    if (check.entries != e2.entries)
      throw std::invalid_argument("inconsistent grid shapes: rows disagree with the double complex model");
    // d_r vanishes once r exceeds the column span
    for (int r = 3; r <= std::max(2, model->columns()); ++r)
      res.pages.push_back(filtered_page(*model, r, max_total, coeffs));
    res.determined = true;
    res.status = cert.holds ? "degenerates at E2" : "higher pages computed from the double complex model";
    const auto tot = model->total();
    for (int n = 0; n <= max_total; ++n)
      res.abutment[n] = n <= tot.hi() ? homology_at(tot, n, coeffs) : FinAbGroup::zero();
  } else if (cert.holds) {
    res.determined = true;
    res.status = "degenerates at E2";
  } else {
    res.determined = false;
    res.status = "higher differentials undetermined";
    return res;
  }

  const auto &last = res.pages.back();
  for (int n = 0; n <= max_total; ++n) {
    std::vector<FinAbGroup> pieces;
    int nonzero = 0;
    FinAbGroup only;
    for (int i = 0; i <= n; ++i) {
      pieces.push_back(last.at(i, n - i));
      if (!pieces.back().is_zero()) {
        ++nonzero;
        only = pieces.back();
      }
    }
    res.graded[n] = std::move(pieces);
    if (!model && nonzero <= 1)
      res.abutment[n] = only;
  }
  return res;
}

} // namespace crys
