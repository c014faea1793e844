#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "crys/exactalg/finite_field.hpp"

namespace crys {

inline int cmp_abs(const Integer &a, const Integer &b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix scalar(int n, const Integer &c);
  static IntMatrix diagonal(std::span<const Integer> diag, int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Integer &operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Integer &operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix &o) const;
  IntMatrix operator+(const IntMatrix &o) const;
  IntMatrix operator-(const IntMatrix &o) const;
  IntMatrix scaled(const Integer &c) const;
  /// Entries reduced into [0, m); m = 0 leaves the matrix unchanged.
  IntMatrix reduced(const Integer &m) const;
  bool is_zero() const;

  /// Horizontal concatenation [A | B]; both must have the same row count.
  static IntMatrix hcat(const IntMatrix &a, const IntMatrix &b);
  static IntMatrix vcat(const IntMatrix &a, const IntMatrix &b);
  IntMatrix columns(std::span<const int> idx) const;
  IntMatrix rows_subset(std::span<const int> idx) const;
  std::vector<Integer> column(int j) const;
  std::vector<Integer> apply(std::span<const Integer> v) const;

  void swap_rows(int a, int b);
  void swap_cols(int a, int b);
  /// row[dst] += c * row[src]
  void add_row_multiple(int dst, int src, const Integer &c);
  /// col[dst] += c * col[src]
  void add_col_multiple(int dst, int src, const Integer &c);
  void negate_row(int i);
  void negate_col(int j);

  friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

/// Column-compressed sparse integer matrix with machine-word entries. Bar
/// complex differentials are {-1, 0, 1}-sparse, so this is the working format
/// for large complexes.
class SparseIntMatrix {
public:
  struct Entry {
    std::int32_t row;
    std::int64_t value;
  };
  using Column = std::vector<Entry>;

  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseIntMatrix from_dense(const IntMatrix &m);
  IntMatrix to_dense() const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const;

  const Column &column(int j) const { return columns_[j]; }
  /// Replaces column j; entries may be unsorted and contain repeats, which are merged.
  void set_column(int j, Column entries);
  std::int64_t at(int i, int j) const;

  SparseIntMatrix transpose() const;
  SparseIntMatrix scaled(std::int64_t c) const;
  /// Entries reduced into (-m/2, m/2] is not attempted; this only drops zeros.
  SparseIntMatrix operator*(const SparseIntMatrix &o) const;
  bool is_zero() const;

  friend bool operator==(const SparseIntMatrix &a, const SparseIntMatrix &b);

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Column> columns_;
};

/// Block matrix [[a, b], [c, d]] from sparse blocks with compatible shapes.
SparseIntMatrix block_matrix(const SparseIntMatrix &a, const SparseIntMatrix &b, const SparseIntMatrix &c,
                             const SparseIntMatrix &d);
SparseIntMatrix sparse_identity(int n, std::int64_t scale = 1);
SparseIntMatrix sparse_zero(int rows, int cols);

} // namespace crys
