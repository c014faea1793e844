#pragma once

#include <string>
#include <vector>

#include "crys/exactalg/witt.hpp"

namespace crys {

/// Dense matrix over W_N(F_{p^d}), row-major.
class WittMatrix {
public:
  WittMatrix(WittRingPtr ring, int rows, int cols);
  static WittMatrix identity(WittRingPtr ring, int n);
  static WittMatrix scalar(WittRingPtr ring, int n, const WittVector &c);
  /// Entries given as integers mapped through Z -> W_N.
  static WittMatrix from_integers(WittRingPtr ring, const std::vector<std::vector<long>> &rows);

  const WittRingPtr &ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  WittVector &at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const WittVector &at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  /// sigma^k applied entrywise.
  WittMatrix twisted(int k) const;
  WittMatrix transposed() const;
  /// Same entries viewed in W_M, either truncating or zero-extending coordinates.
  WittMatrix rebased(const WittRingPtr &ring) const;
  bool is_zero() const;
  std::vector<WittVector> apply(const std::vector<WittVector> &v) const;
  std::string str() const;

  friend WittMatrix operator*(const WittMatrix &a, const WittMatrix &b);
  friend WittMatrix operator+(const WittMatrix &a, const WittMatrix &b);
  friend WittMatrix operator-(const WittMatrix &a, const WittMatrix &b);
  friend bool operator==(const WittMatrix &a, const WittMatrix &b);

private:
  WittRingPtr ring_;
  int rows_, cols_;
  std::vector<WittVector> data_;
};

/// Elementary divisors of a matrix over the local ring W_N: returns the
/// exponents e with diagonal entries p^e (e == N for zero diagonal entries),
/// one per min(rows, cols), sorted ascending.
std::vector<int> local_smith_exponents(WittMatrix m);

/// Exponents (e_1, ..., e_r), 0 < e_i <= N, with W_N^rows / colspan(m) = sum W_N / p^{e_i}.
std::vector<int> cokernel_exponents(const WittMatrix &m);

} // namespace crys
