#include "crys/homology/tower.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "crys/errors.hpp"
#include "crys/homology/subquotient.hpp"

namespace crys {

namespace {

std::vector<Integer> generator_orders(const FinAbGroup &g) {
  if (!g.is_finite())
    throw std::invalid_argument("tower levels must be finite groups");
  return g.torsion();
}

} // namespace

void Tower::validate() const {
  if (levels.empty())
    throw std::invalid_argument("empty tower");
  if (transitions.size() + 1 != levels.size())
    throw std::invalid_argument("tower needs one transition per consecutive pair of levels");
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    const auto &m = transitions[k];
    auto lo = generator_orders(levels[k]), hi = generator_orders(levels[k + 1]);
    if (m.rows() != static_cast<int>(lo.size()) || m.cols() != static_cast<int>(hi.size()))
      throw std::invalid_argument(fmt::format("transition {} has wrong shape", k));
    // each generator of order d must land on an element killed by d
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < m.rows(); ++i) {
        Integer x = m(i, j) * hi[j];
        if (!mpz_divisible_p(x.get_mpz_t(), lo[i].get_mpz_t()))
          throw std::invalid_argument(fmt::format("transition {} is not a homomorphism", k));
      }
  }
}

FinAbGroup tower_image(const Tower &t, int from, int to) {
  const int a = from - t.first_index, b = to - t.first_index;
  if (a < b || b < 0 || a >= static_cast<int>(t.levels.size()))
    throw std::out_of_range("tower_image: bad level indices");
  const auto orders = generator_orders(t.levels[b]);
  const int k = static_cast<int>(orders.size());
  IntMatrix m = IntMatrix::identity(static_cast<int>(generator_orders(t.levels[a]).size()));
  for (int lvl = a - 1; lvl >= b; --lvl) {
    m = t.transitions[lvl] * m;
    // keep entries small: reduce row i modulo the order of generator i
    const auto o = generator_orders(t.levels[lvl]);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), o[i].get_mpz_t());
  }
  IntMatrix rel = IntMatrix::diagonal(orders, k, k);
  Subquotient img(lattice_basis(IntMatrix::hcat(m, rel)), rel);
  return img.group();
}

TowerLimit tower_limit(const Tower &t, int window) {
  t.validate();
  if (window < 1)
    throw std::invalid_argument("tower window must be positive");
  const int first = t.first_index;
  const int L = first + static_cast<int>(t.levels.size()) - 1;
  if (static_cast<int>(t.levels.size()) < window + 1)
    throw BoundExceeded(fmt::format("tower has {} levels, window {} needs {}", t.levels.size(), window, window + 1));
  TowerLimit res;
  for (int n = first; n <= L; ++n)
    res.stable_images.push_back(tower_image(t, L, n));
  auto image = [&](int n) -> const FinAbGroup & { return res.stable_images[n - first]; };
  // level n is settled when the top two levels have the same image in it
  std::vector<bool> settled(L - first + 1, false);
  for (int n = first; n < L; ++n)
    settled[n - first] = tower_image(t, L - 1, n) == image(n);
  // highest run of `window` settled levels whose images map isomorphically
  for (int top = L - 1; top - window + 1 >= first; --top) {
    bool ok = true;
    for (int n = top - window + 1; n <= top && ok; ++n) {
      ok = settled[n - first];
      if (ok && n > top - window + 1)
        ok = image(n) == image(n - 1);
    }
    if (ok) {
      res.stable_from = top - window + 1;
      res.limit = image(top);
      res.lim1 = FinAbGroup::zero();
      res.lim1_reason = "levels are finite, so the tower is Mittag-Leffler";
      return res;
    }
  }
  throw BoundExceeded(fmt::format("images do not stabilize over {} consecutive levels below level {}", window, L));
}

} // namespace crys
