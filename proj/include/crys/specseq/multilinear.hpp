#pragma once

#include <cstdint>
#include <vector>

#include "crys/homology/matrix.hpp"

namespace crys {

std::int64_t binomial(int n, int k);

/// Strictly increasing j-tuples from {0..n-1}, lexicographic.
std::vector<std::vector<int>> increasing_tuples(int n, int j);
/// Non-decreasing j-tuples from {0..n-1}, lexicographic.
std::vector<std::vector<int>> nondecreasing_tuples(int n, int j);
/// Position of an increasing tuple in increasing_tuples(n, j).
std::int64_t increasing_rank(const std::vector<int> &s, int n);
/// Position of a non-decreasing tuple in nondecreasing_tuples(n, j).
std::int64_t nondecreasing_rank(const std::vector<int> &s, int n);

/// Induced map on the j-th exterior powers (basis e_S, S increasing).
SparseIntMatrix exterior_power(const SparseIntMatrix &m, int j);
IntMatrix exterior_power(const IntMatrix &m, int j);
/// Induced map on the j-th symmetric powers (basis monomials, S non-decreasing).
IntMatrix symmetric_power(const IntMatrix &m, int j);

/// Multiplication Sym^a x Sym^b -> Sym^(a+b) on a rank-n module, as a matrix
/// from the tensor basis (index i * dim Sym^b + k) to the monomial basis.
IntMatrix symmetric_multiplication(int n, int a, int b);

} // namespace crys
