#include "crys/homology/kunneth.hpp"

namespace crys {

FinAbGroup kunneth(const GradedGroup &a, const GradedGroup &b, int n) {
  FinAbGroup r;
  for (const auto &[i, gi] : a) {
    if (auto it = b.find(n - i); it != b.end())
      r = r.direct_sum(gi.tensor(it->second));
    if (auto it = b.find(n - 1 - i); it != b.end())
      r = r.direct_sum(gi.tor(it->second));
  }
  return r;
}

} // namespace crys
