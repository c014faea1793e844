#pragma once

#include <map>

#include "crys/homology/fin_ab_group.hpp"

namespace crys {

using GradedGroup = std::map<int, FinAbGroup>;

/// Degree-n homology of a tensor product of free complexes from the homology
/// of the factors: sum of H_i (x) H'_j over i+j = n plus Tor(H_i, H'_j) over i+j = n-1.
FinAbGroup kunneth(const GradedGroup &a, const GradedGroup &b, int n);

} // namespace crys
