#include "crys/homology/chain_complex.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace crys {

ChainComplex ChainComplex::make(Grading grading, int lo, std::vector<int> ranks,
                                std::map<int, SparseIntMatrix> differentials) {
  if (ranks.empty())
    throw std::invalid_argument("chain complex needs at least one degree");
  ChainComplex c;
  c.grading_ = grading;
  c.lo_ = lo;
  c.ranks_ = std::move(ranks);
  for (int r : c.ranks_)
    if (r < 0)
      throw std::invalid_argument("negative rank");
  const int hi = c.hi();
  c.valid_lo_ = lo;
  c.valid_hi_ = hi;
  for (auto &[n, m] : differentials)
    if (n < lo || n > hi)
      throw std::invalid_argument(fmt::format("differential at degree {} outside [{}, {}]", n, lo, hi));
  c.out_.resize(c.ranks_.size());
  for (int r : c.ranks_)
    c.zero_in_.emplace_back(r, 0);
  for (int n = lo; n <= hi; ++n) {
    const int t = c.target(n);
    const int rows = c.rank(t), cols = c.rank(n);
    auto it = differentials.find(n);
    if (it == differentials.end()) {
      c.out_[n - lo] = SparseIntMatrix(rows, cols);
      continue;
    }
    if (it->second.rows() != rows || it->second.cols() != cols)
      throw std::invalid_argument(fmt::format("differential at degree {} has shape {}x{}, expected {}x{}", n,
                                              it->second.rows(), it->second.cols(), rows, cols));
    c.out_[n - lo] = std::move(it->second);
  }
  for (int n = lo; n <= hi; ++n) {
    const int t = c.target(n);
    if (t < lo || t > hi)
      continue;
    if (!(c.outgoing(t) * c.outgoing(n)).is_zero())
      throw std::invalid_argument(fmt::format("d o d != 0 starting at degree {}", n));
  }
  return c;
}

int ChainComplex::rank(int n) const {
  if (n < lo_ || n > hi())
    return 0;
  return ranks_[n - lo_];
}

const SparseIntMatrix &ChainComplex::outgoing(int n) const {
  if (n < lo_ || n > hi())
    return empty_;
  return out_[n - lo_];
}

const SparseIntMatrix &ChainComplex::incoming(int n) const {
  const int src = grading_ == Grading::Homological ? n + 1 : n - 1;
  if (src < lo_ || src > hi() || n < lo_ || n > hi()) {
    if (n < lo_ || n > hi())
      return empty_;
    return zero_in_[n - lo_];
  }
  return out_[src - lo_];
}

ChainComplex ChainComplex::with_valid_range(int lo, int hi) const {
  ChainComplex c = *this;
  c.valid_lo_ = lo;
  c.valid_hi_ = hi;
  return c;
}

bool ChainComplex::degree_valid(int n) const {
  if (n < lo_ || n > hi())
    return false;
  return n >= valid_lo_ && n <= valid_hi_;
}

ChainComplex ChainComplex::regraded() const {
  ChainComplex c;
  c.grading_ = grading_ == Grading::Homological ? Grading::Cohomological : Grading::Homological;
  c.lo_ = -hi();
  c.ranks_.assign(ranks_.rbegin(), ranks_.rend());
  c.out_.assign(out_.rbegin(), out_.rend());
  c.zero_in_.assign(zero_in_.rbegin(), zero_in_.rend());
  c.valid_lo_ = -valid_hi_;
  c.valid_hi_ = -valid_lo_;
  return c;
}

ChainComplex ChainComplex::shifted(int k) const {
  ChainComplex c = *this;
  c.lo_ += k;
  c.valid_lo_ += k;
  c.valid_hi_ += k;
  return c;
}

ChainComplex ChainComplex::dual() const {
  ChainComplex c = *this;
  c.grading_ = grading_ == Grading::Homological ? Grading::Cohomological : Grading::Homological;
  // the map leaving degree n in the dual is the transpose of the map arriving at n
  for (int n = lo_; n <= hi(); ++n) {
    const int src = grading_ == Grading::Homological ? n + 1 : n - 1;
    if (src >= lo_ && src <= hi())
      c.out_[n - lo_] = out_[src - lo_].transpose();
    else
      c.out_[n - lo_] = SparseIntMatrix(0, rank(n));
  }
  for (int n = lo_; n <= hi(); ++n)
    c.zero_in_[n - lo_] = SparseIntMatrix(rank(n), 0);
  return c;
}

} // namespace crys
