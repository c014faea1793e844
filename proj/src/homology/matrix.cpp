#include "crys/homology/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

namespace crys {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto &r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw std::invalid_argument("ragged matrix literal");
    for (long v : r)
      data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) { return scalar(n, 1); }

IntMatrix IntMatrix::scalar(int n, const Integer &c) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = c;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> diag, int rows, int cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size() && static_cast<int>(i) < std::min(rows, cols); ++i)
    m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix &o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument(fmt::format("matrix product shape mismatch {}x{} * {}x{}", rows_, cols_, o.rows_, o.cols_));
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Integer &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0)
          r(i, j) += a * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] += o.data_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] -= o.data_[i];
  return r;
}

IntMatrix IntMatrix::scaled(const Integer &c) const {
  IntMatrix r = *this;
  for (auto &x : r.data_)
    x *= c;
  return r;
}

IntMatrix IntMatrix::reduced(const Integer &m) const {
  if (m == 0)
    return *this;
  IntMatrix r = *this;
  for (auto &x : r.data_)
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer &x) { return x == 0; });
}

IntMatrix IntMatrix::hcat(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows_ != b.rows_)
    throw std::invalid_argument("hcat row mismatch");
  IntMatrix r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j)
      r(i, j) = a(i, j);
    for (int j = 0; j < b.cols_; ++j)
      r(i, a.cols_ + j) = b(i, j);
  }
  return r;
}

IntMatrix IntMatrix::vcat(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols_ != b.cols_)
    throw std::invalid_argument("vcat column mismatch");
  IntMatrix r(a.rows_ + b.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) {
    for (int i = 0; i < a.rows_; ++i)
      r(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i)
      r(a.rows_ + i, j) = b(i, j);
  }
  return r;
}

IntMatrix IntMatrix::columns(std::span<const int> idx) const {
  IntMatrix r(rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k)
      r(i, static_cast<int>(k)) = (*this)(i, idx[k]);
  return r;
}

IntMatrix IntMatrix::rows_subset(std::span<const int> idx) const {
  IntMatrix r(static_cast<int>(idx.size()), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (int j = 0; j < cols_; ++j)
      r(static_cast<int>(k), j) = (*this)(idx[k], j);
  return r;
}

std::vector<Integer> IntMatrix::column(int j) const {
  std::vector<Integer> c(rows_);
  for (int i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<Integer> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (v[j] != 0)
        r[i] += (*this)(i, j) * v[j];
  return r;
}

void IntMatrix::swap_rows(int a, int b) {
  if (a == b)
    return;
  for (int j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
  if (a == b)
    return;
  for (int i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(int dst, int src, const Integer &c) {
  if (c == 0)
    return;
  for (int j = 0; j < cols_; ++j)
    if ((*this)(src, j) != 0)
      (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(int dst, int src, const Integer &c) {
  if (c == 0)
    return;
  for (int i = 0; i < rows_; ++i)
    if ((*this)(i, src) != 0)
      (*this)(i, dst) += c * (*this)(i, src);
}

void IntMatrix::negate_row(int i) {
  for (int j = 0; j < cols_; ++j)
    (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(int j) {
  for (int i = 0; i < rows_; ++i)
    (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < cols_; ++j)
      s += (j ? ", " : "") + (*this)(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix &m) {
  SparseIntMatrix s(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) {
        if (!m(i, j).fits_slong_p())
          throw std::overflow_error("entry does not fit a machine word");
        s.columns_[j].push_back({i, m(i, j).get_si()});
      }
  return s;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix m(rows_, cols_);
  for (int j = 0; j < cols_; ++j)
    for (const auto &e : columns_[j])
      m(e.row, j) = static_cast<long>(e.value);
  return m;
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto &c : columns_)
    n += c.size();
  return n;
}

void SparseIntMatrix::set_column(int j, Column entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) { return a.row < b.row; });
  Column merged;
  merged.reserve(entries.size());
  for (const auto &e : entries) {
    if (e.row < 0 || e.row >= rows_)
      throw std::out_of_range(fmt::format("sparse entry row {} outside [0, {})", e.row, rows_));
    if (!merged.empty() && merged.back().row == e.row)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry &e) { return e.value == 0; });
  columns_[j] = std::move(merged);
}

std::int64_t SparseIntMatrix::at(int i, int j) const {
  const auto &c = columns_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const Entry &e, int r) { return e.row < r; });
  return (it != c.end() && it->row == i) ? it->value : 0;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  for (int j = 0; j < cols_; ++j)
    for (const auto &e : columns_[j])
      t.columns_[e.row].push_back({j, e.value});
  return t;
}

SparseIntMatrix SparseIntMatrix::scaled(std::int64_t c) const {
  SparseIntMatrix r(rows_, cols_);
  if (c == 0)
    return r;
  for (int j = 0; j < cols_; ++j) {
    r.columns_[j] = columns_[j];
    for (auto &e : r.columns_[j])
      e.value *= c;
  }
  return r;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix &o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument(
        fmt::format("sparse product shape mismatch {}x{} * {}x{}", rows_, cols_, o.rows_, o.cols_));
  SparseIntMatrix r(rows_, o.cols_);
#pragma omp parallel for schedule(dynamic, 64)
  for (int j = 0; j < o.cols_; ++j) {
    Column acc;
    for (const auto &e : o.columns_[j])
      for (const auto &f : columns_[e.row])
        acc.push_back({f.row, f.value * e.value});
    std::sort(acc.begin(), acc.end(), [](const Entry &a, const Entry &b) { return a.row < b.row; });
    Column merged;
    for (const auto &e : acc) {
      if (!merged.empty() && merged.back().row == e.row)
        merged.back().value += e.value;
      else
        merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry &e) { return e.value == 0; });
    r.columns_[j] = std::move(merged);
  }
  return r;
}

bool SparseIntMatrix::is_zero() const {
  for (const auto &c : columns_)
    if (!c.empty())
      return false;
  return true;
}

bool operator==(const SparseIntMatrix &a, const SparseIntMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    return false;
  for (int j = 0; j < a.cols_; ++j) {
    const auto &x = a.columns_[j], &y = b.columns_[j];
    if (x.size() != y.size())
      return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].row != y[k].row || x[k].value != y[k].value)
        return false;
  }
  return true;
}

SparseIntMatrix block_matrix(const SparseIntMatrix &a, const SparseIntMatrix &b, const SparseIntMatrix &c,
                             const SparseIntMatrix &d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw std::invalid_argument("block_matrix: incompatible block shapes");
  SparseIntMatrix r(a.rows() + c.rows(), a.cols() + b.cols());
  for (int j = 0; j < a.cols(); ++j) {
    SparseIntMatrix::Column col = a.column(j);
    for (const auto &e : c.column(j))
      col.push_back({e.row + a.rows(), e.value});
    r.set_column(j, std::move(col));
  }
  for (int j = 0; j < b.cols(); ++j) {
    SparseIntMatrix::Column col = b.column(j);
    for (const auto &e : d.column(j))
      col.push_back({e.row + a.rows(), e.value});
    r.set_column(a.cols() + j, std::move(col));
  }
  return r;
}

SparseIntMatrix sparse_identity(int n, std::int64_t scale) {
  SparseIntMatrix r(n, n);
  if (scale != 0)
    for (int i = 0; i < n; ++i)
      r.set_column(i, {{i, scale}});
  return r;
}

SparseIntMatrix sparse_zero(int rows, int cols) { return {rows, cols}; }

} // namespace crys
