#pragma once

#include <span>
#include <vector>

#include "crys/homology/chain_complex.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/homotopy.hpp"
#include "crys/homology/kunneth.hpp"

namespace crys {

/// Z tensored over Z[Z/n] with the 2-periodic resolution (t - 1, norm, t - 1, ...):
/// rank 1 in each degree 0..top, d_odd = 0, d_even = n.
ChainComplex cyclic_resolution_complex(long n, int top);

/// H_0..H_bound of Z/n from the periodic resolution.
GradedGroup cyclic_resolution_homology(long n, const Coefficients &coeffs, int bound);

/// Tensor product of the periodic resolution complexes of Z/m_1 x ... x Z/m_r
/// (Koszul signs), degrees 0..top. Basis of degree k: compositions
/// (k_1, ..., k_r) of k in lexicographic order.
ChainComplex product_resolution_complex(std::span<const long> orders, int top);

/// Chain map between product resolution complexes induced by the inclusion
/// Z/m_i -> Z/m'_i (generator to (m'_i/m_i) times generator) in each factor.
/// Requires m_i | m'_i.
ChainMap product_resolution_inclusion(std::span<const long> from, std::span<const long> to, int top);

/// Compositions of k into r non-negative parts, lexicographic.
std::vector<std::vector<int>> compositions(int k, int r);

} // namespace crys
