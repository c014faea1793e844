#include "crys/dieudonne/witt_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace crys {

WittMatrix::WittMatrix(WittRingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, ring_->zero());
}

WittMatrix WittMatrix::identity(WittRingPtr ring, int n) { return scalar(ring, n, ring->one()); }

WittMatrix WittMatrix::scalar(WittRingPtr ring, int n, const WittVector &c) {
  WittMatrix m(std::move(ring), n, n);
  for (int i = 0; i < n; ++i)
    m.at(i, i) = c;
  return m;
}

WittMatrix WittMatrix::from_integers(WittRingPtr ring, const std::vector<std::vector<long>> &rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  WittMatrix m(ring, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw std::invalid_argument("ragged matrix");
    for (int j = 0; j < c; ++j)
      m.at(i, j) = ring->from_integer(rows[i][j]);
  }
  return m;
}

WittMatrix WittMatrix::twisted(int k) const {
  WittMatrix m = *this;
  for (auto &x : m.data_)
    x = x.sigma_power(k);
  return m;
}

WittMatrix WittMatrix::transposed() const {
  WittMatrix m(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m.at(j, i) = at(i, j);
  return m;
}

WittMatrix WittMatrix::rebased(const WittRingPtr &ring) const {
  if (!ring->field()->same_as(*ring_->field()))
    throw std::invalid_argument("rebasing across different residue fields");
  WittMatrix m(ring, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    auto c = data_[k].coords();
    c.resize(ring->length(), 0);
    m.data_[k] = ring->from_coords(std::move(c));
  }
  return m;
}

bool WittMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const WittVector &x) { return x.is_zero(); });
}

std::vector<WittVector> WittMatrix::apply(const std::vector<WittVector> &v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("vector length mismatch");
  std::vector<WittVector> out(rows_, ring_->zero());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero())
        out[i] = out[i] + at(i, j) * v[j];
  return out;
}

std::string WittMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < cols_; ++j) {
      if (j)
        s += ", ";
      s += "(";
      const auto &c = at(i, j).coords();
      for (std::size_t k = 0; k < c.size(); ++k)
        s += (k ? "," : "") + std::to_string(c[k]);
      s += ")";
    }
    s += "]";
  }
  return s + "]";
}

WittMatrix operator*(const WittMatrix &a, const WittMatrix &b) {
  if (a.cols_ != b.rows_ || !a.ring_->same_as(*b.ring_))
    throw std::invalid_argument("matrix product shape or ring mismatch");
  WittMatrix m(a.ring_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const auto &x = a.at(i, k);
      if (x.is_zero())
        continue;
      for (int j = 0; j < b.cols_; ++j)
        if (!b.at(k, j).is_zero())
          m.at(i, j) = m.at(i, j) + x * b.at(k, j);
    }
  return m;
}

WittMatrix operator+(const WittMatrix &a, const WittMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  WittMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k)
    m.data_[k] = m.data_[k] + b.data_[k];
  return m;
}

WittMatrix operator-(const WittMatrix &a, const WittMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  WittMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k)
    m.data_[k] = m.data_[k] - b.data_[k];
  return m;
}

bool operator==(const WittMatrix &a, const WittMatrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<int> local_smith_exponents(WittMatrix m) {
  const int N = m.ring()->length();
  const int r = m.rows(), c = m.cols(), k = std::min(r, c);
  std::vector<int> out;
  for (int t = 0; t < k; ++t) {
    int best = N, bi = -1, bj = -1;
    for (int i = t; i < r && best > 0; ++i)
      for (int j = t; j < c; ++j) {
        int v = m.at(i, j).valuation();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0)
            break;
        }
      }
    if (bi < 0) {
      out.resize(k, N);
      break;
    }
    if (bi != t)
      for (int j = 0; j < c; ++j)
        std::swap(m.at(t, j), m.at(bi, j));
    if (bj != t)
      for (int i = 0; i < r; ++i)
        std::swap(m.at(i, t), m.at(i, bj));
    // every entry has valuation >= best, so pivot divides everything exactly
    const WittVector unit_inv = m.at(t, t).divide_by_p_power(best).inverse();
    for (int i = t + 1; i < r; ++i) {
      if (m.at(i, t).is_zero())
        continue;
      WittVector f = m.at(i, t).divide_by_p_power(best) * unit_inv;
      for (int j = t; j < c; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(t, j);
    }
    for (int j = t + 1; j < c; ++j) {
      if (m.at(t, j).is_zero())
        continue;
      WittVector f = m.at(t, j).divide_by_p_power(best) * unit_inv;
      for (int i = t; i < r; ++i)
        m.at(i, j) = m.at(i, j) - f * m.at(i, t);
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> cokernel_exponents(const WittMatrix &m) {
  const int N = m.ring()->length();
  auto ex = local_smith_exponents(m);
  ex.resize(m.rows(), N);
  std::vector<int> out;
  for (int e : ex)
    if (e > 0)
      out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace crys
