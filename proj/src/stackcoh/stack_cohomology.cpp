#include "crys/stackcoh/stack_cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <variant>

#include <fmt/format.h>

#include "crys/barstack/cyclic.hpp"
#include "crys/dieudonne/catalog.hpp"
#include "crys/errors.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/kernels.hpp"
#include "crys/homology/kunneth.hpp"
#include "crys/homology/subquotient.hpp"
#include "crys/specseq/e1_row.hpp"
#include "crys/specseq/multilinear.hpp"
#include "crys/stackcoh/oracle.hpp"

namespace crys {

namespace {

Integer ipow(int p, int k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

// k with |G| = p^k, or -1
int log_p_order(const FinAbGroup &g, int p) {
  Integer n = g.order();
  int k = 0;
  while (n > 1 && mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

FinAbGroup copies(const Integer &q, std::int64_t k) {
  std::vector<Integer> orders(k, q);
  return FinAbGroup::from_orders(std::span<const Integer>(orders));
}

std::vector<Integer> factors_of(const SparseIntMatrix &m) {
  if (!m.rows() || !m.cols())
    return {};
  return invariant_factors(m);
}

Integer gcd(const Integer &a, const Integer &b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Inverse of a square matrix over Z/q for q a prime power, by elimination on unit pivots.
std::optional<IntMatrix> inverse_mod(const IntMatrix &a, const Integer &q) {
  const int n = a.rows();
  if (a.cols() != n)
    return std::nullopt;
  IntMatrix m = a.reduced(q), inv = IntMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n && piv < 0; ++r)
      if (gcd(m(r, c), q) == 1)
        piv = r;
    if (piv < 0)
      return std::nullopt;
    m.swap_rows(c, piv);
    inv.swap_rows(c, piv);
    Integer u;
    mpz_invert(u.get_mpz_t(), m(c, c).get_mpz_t(), q.get_mpz_t());
    for (int k = 0; k < n; ++k) {
      m(c, k) = m(c, k) * u % q;
      inv(c, k) = inv(c, k) * u % q;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0)
        continue;
      Integer f = -m(r, c);
      m.add_row_multiple(r, c, f);
      inv.add_row_multiple(r, c, f);
    }
    m = m.reduced(q);
    inv = inv.reduced(q);
  }
  return inv;
}

bool equal_mod(const IntMatrix &a, const IntMatrix &b, const Integer &q) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).reduced(q).is_zero();
}

void attach_limit(DegreeTower &dt, int window) {
  try {
    dt.limit = tower_limit(dt.tower, window);
  } catch (const BoundExceeded &e) {
    dt.note = e.what();
  }
}

} // namespace

bool StackCohomologyResult::all_pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto &a) { return a.pass; });
}

Tower reduction_tower(const ChainComplex &c, int degree, int p, int top) {
  if (top < 1)
    throw std::invalid_argument("tower needs at least one level");
  // elementary pieces: Z --d--> Z into this degree leaves a cokernel Z/d,
  // out of it a kernel; the rest is free
  enum Kind { Cokernel, Kernel, Free };
  struct Piece {
    Kind kind;
    Integer d;
  };
  std::vector<Piece> pieces;
  for (const auto &d : factors_of(c.incoming(degree)))
    pieces.push_back({Cokernel, d});
  for (const auto &d : factors_of(c.outgoing(degree)))
    pieces.push_back({Kernel, d});
  const int free = c.rank(degree) - static_cast<int>(pieces.size());
  if (free < 0)
    throw std::logic_error("negative Betti number");
  for (int k = 0; k < free; ++k)
    pieces.push_back({Free, 0});

  // order of each piece at level k and its position among the level's generators
  std::vector<std::vector<Integer>> order(top + 1);
  std::vector<std::vector<int>> position(top + 1);
  Tower t;
  t.first_index = 1;
  for (int k = 1; k <= top; ++k) {
    const Integer q = ipow(p, k);
    for (const auto &pc : pieces)
      order[k].push_back(pc.kind == Free ? q : gcd(pc.d, q));
    std::vector<int> idx;
    for (int s = 0; s < static_cast<int>(pieces.size()); ++s)
      if (order[k][s] > 1)
        idx.push_back(s);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return order[k][a] < order[k][b]; });
    position[k].assign(pieces.size(), -1);
    std::vector<Integer> orders;
    for (int g = 0; g < static_cast<int>(idx.size()); ++g) {
      position[k][idx[g]] = g;
      orders.push_back(order[k][idx[g]]);
    }
    t.levels.push_back(FinAbGroup::from_orders(std::span<const Integer>(orders)));
  }
  for (int k = 1; k < top; ++k) {
    const int rows = t.levels[k - 1].num_generators(), cols = t.levels[k].num_generators();
    IntMatrix m(rows, cols);
    for (int s = 0; s < static_cast<int>(pieces.size()); ++s) {
      const int src = position[k + 1][s], dst = position[k][s];
      if (src < 0 || dst < 0)
        continue;
      // a kernel generator (q/g) e at level k + 1 is p g_k / g_{k+1} times the one at level k
      Integer coeff = 1;
      if (pieces[s].kind == Kernel)
        coeff = p * order[k][s] / order[k + 1][s];
      m(dst, src) = coeff % order[k][s];
    }
    t.transitions.push_back(std::move(m));
  }
  t.validate();
  return t;
}

Tower reduction_tower_reference(const ChainComplex &c, int degree, int p, int top) {
  std::vector<Subquotient> sq;
  for (int k = 1; k <= top; ++k)
    sq.push_back(homology_subquotient(c, degree, ipow(p, k)));
  Tower t;
  t.first_index = 1;
  for (const auto &s : sq)
    t.levels.push_back(s.group());
  const IntMatrix id = IntMatrix::identity(c.rank(degree));
  for (int k = 0; k + 1 < top; ++k)
    t.transitions.push_back(induced_map(sq[k + 1], sq[k], id));
  t.validate();
  return t;
}

StackCohomologyResult constant_group_stack_cohomology(const FinAbGroup &g, int p, int N, int bound,
                                                      const StackOptions &opts) {
  if (N < 1 || bound < 0)
    throw std::invalid_argument("need N >= 1 and bound >= 0");
  const int m = log_p_order(g, p);
  if (m < 0)
    throw std::invalid_argument(fmt::format("|G| = {} is not a power of p = {}", g.order().get_str(), p));
  if (g.order() > opts.budget.max_group_order)
    throw BudgetExceeded(fmt::format("|G| = {} exceeds the cap {}", g.order().get_str(), opts.budget.max_group_order));
  if (bound > opts.budget.max_degree)
    throw BudgetExceeded(fmt::format("degree bound {} exceeds the cap {}", bound, opts.budget.max_degree));
  Integer cochains = 1;
  for (int i = 0; i <= bound + 1; ++i)
    cochains *= g.order();
  if (cochains > Integer(std::to_string(opts.budget.budget)))
    throw BudgetExceeded(fmt::format("|G|^{} = {} cochains exceed {}", bound + 1, cochains.get_str(),
                                     opts.budget.budget));

  StackCohomologyResult res;
  res.description = fmt::format("B{} (constant)", g.str());
  res.p = p;
  res.N = N;
  res.bound = bound;
  res.tower_index = "coefficient length k in W_k";

  const ConstantGroupOracle oracle(g);
  std::vector<ChainComplex> rows{alternating_face_complex(oracle.row(0, bound + 1))};
  for (int j = 1; j <= bound; ++j)
    rows.push_back(zero_row(bound + 1));
  const auto ss = run_spectral_sequence(rows, bound, Coefficients::witt(p, N));
  res.certificate = ss.certificate;
  res.cohomology = ss.abutment;
  const Integer q = ipow(p, N);
  res.assertions.push_back({"H0 = W_N", res.cohomology.at(0) == FinAbGroup::cyclic(q), res.cohomology.at(0).str()});
  {
    bool ok = true;
    std::string detail = fmt::format("|G| = {}", g.order().get_str());
    for (int i = 1; i <= bound; ++i)
      if (!res.cohomology.at(i).killed_by(g.order())) {
        ok = false;
        detail = fmt::format("H^{} = {} is not killed by |G| = {}", i, res.cohomology.at(i).str(), g.order().get_str());
      }
    res.assertions.push_back({"positive degrees killed by |G|", ok, detail});
  }

  if (!opts.towers)
    return res;
  const int top = opts.tower_top > 0 ? opts.tower_top : std::max(N, 2 * m + opts.window + 2);
  for (int i = 0; i <= bound; ++i) {
    DegreeTower dt{reduction_tower(rows[0], i, p, top), std::nullopt, ""};
    attach_limit(dt, opts.window);
    if (dt.limit)
      res.stable[i] = dt.limit->limit;
    if (N <= top) {
      const auto &level = dt.tower.levels[N - 1];
      res.assertions.push_back({fmt::format("tower level N agrees with H^{}", i), level == res.cohomology.at(i),
                                level.str()});
    }
    res.towers.emplace(i, std::move(dt));
  }
  if (bound >= 1) {
    const auto &t1 = res.towers.at(1);
    res.assertions.push_back({"H1 stable limit = 0", t1.limit && t1.limit->limit.is_zero(),
                              t1.limit ? t1.limit->limit.str() : t1.note});
  }
  return res;
}

std::vector<AssertionOutcome> bockstein_identity(const StackCohomologyResult &r, int max_n) {
  std::vector<AssertionOutcome> out;
  auto t1 = r.towers.find(1);
  auto h2 = r.stable.find(2);
  if (t1 == r.towers.end() || h2 == r.stable.end()) {
    out.push_back({"bockstein identity", false, "needs the degree 1 tower and a stable H^2"});
    return out;
  }
  for (int n = 1; n <= max_n; ++n) {
    const int idx = n - t1->second.tower.first_index;
    if (idx < 0 || idx >= static_cast<int>(t1->second.tower.levels.size())) {
      out.push_back({fmt::format("bockstein n = {}", n), false, "tower too short"});
      continue;
    }
    const Integer lhs = t1->second.tower.levels[idx].order();
    const Integer rhs = h2->second.torsion_subgroup_order(ipow(r.p, n));
    out.push_back({fmt::format("bockstein n = {}", n), lhs == rhs,
                   fmt::format("|H^1(W_{})| = {}, |H^2[p^{}]| = {}", n, lhs.get_str(), n, rhs.get_str())});
  }
  return out;
}

StackCohomologyResult abelian_model_stack_cohomology(int g, int p, int N, int bound,
                                                     const std::optional<IntMatrix> &frobenius) {
  if (g < 1 || N < 1 || bound < 0)
    throw std::invalid_argument("need g >= 1, N >= 1, bound >= 0");
  const int rank = 2 * g;
  if (frobenius && (frobenius->rows() != rank || frobenius->cols() != rank))
    throw std::invalid_argument(fmt::format("Frobenius must be {0}x{0}", rank));
  if (binomial(rank * (bound + 2), bound / 2 + 1) > 200000)
    throw BudgetExceeded(fmt::format("rows for g = {}, bound {} are too large", g, bound));
  const Integer q = ipow(p, N);
  StackCohomologyResult res;
  res.description = fmt::format("BA, A abelian of dimension {}", g);
  res.p = p;
  res.N = N;
  res.bound = bound;

  const AbelianModelOracle oracle(rank);
  std::vector<ChainComplex> rows;
  for (int j = 0; j <= bound; ++j)
    rows.push_back(alternating_face_complex(oracle.row(j, bound + 2 - j)));
  const auto ss = run_spectral_sequence(rows, bound, Coefficients::witt(p, N));
  res.certificate = ss.certificate;
  res.assertions.push_back({"degeneration certificate", ss.certificate.holds, ss.certificate.str()});
  if (!ss.determined)
    return res;
  res.cohomology = ss.abutment;
  {
    bool ok = true;
    std::string detail = "H^{2j} = Sym^j H^1, odd degrees vanish";
    for (int n = 0; n <= bound; ++n) {
      const FinAbGroup want = n % 2 ? FinAbGroup::zero() : copies(q, binomial(rank + n / 2 - 1, n / 2));
      if (!(res.cohomology.at(n) == want)) {
        ok = false;
        detail = fmt::format("H^{} = {}, expected {}", n, res.cohomology.at(n).str(), want.str());
        break;
      }
    }
    res.assertions.push_back({"Sym structure", ok, detail});
  }

  // H^{2j} = E_2^{j,j} = H^j(row j); the cup monomial x_{a1} ... x_{aj} is the
  // class of e_{a1} in summand 1 wedge ... wedge e_{aj} in summand j at level j
  std::map<int, Subquotient> classes;
  std::map<int, IntMatrix> basis;
  auto wedge_class = [&](int j, const std::vector<int> &letters) {
    std::vector<int> idx;
    for (int k = 0; k < static_cast<int>(letters.size()); ++k)
      idx.push_back(k * rank + letters[k]);
    std::vector<Integer> v(rows[j].rank(j));
    v[increasing_rank(idx, rank * j)] = 1;
    return classes.at(j).coordinates(v);
  };
  bool basis_ok = true;
  std::string basis_detail = "cup monomials are cocycles and form a basis";
  for (int j = 1; 2 * j <= bound; ++j) {
    classes.emplace(j, homology_subquotient(rows[j], j, q));
    const auto monomials = nondecreasing_tuples(rank, j);
    IntMatrix phi(classes.at(j).group().num_generators(), static_cast<int>(monomials.size()));
    try {
      for (int c = 0; c < phi.cols(); ++c) {
        auto coords = wedge_class(j, monomials[c]);
        for (int r = 0; r < phi.rows(); ++r)
          phi(r, c) = coords[r];
      }
    } catch (const std::invalid_argument &) {
      basis_ok = false;
      basis_detail = fmt::format("a cup monomial in H^{} is not a cocycle", 2 * j);
      break;
    }
    if (!inverse_mod(phi, q)) {
      basis_ok = false;
      basis_detail = fmt::format("cup monomials do not span H^{}", 2 * j);
      break;
    }
    basis.emplace(j, std::move(phi));
  }
  if (bound >= 2)
    res.assertions.push_back({"cup monomial basis", basis_ok, basis_detail});
  if (!basis_ok)
    return res;

  if (bound >= 4) {
    // H^2 x H^2 -> H^4 against the Sym multiplication, in the monomial bases
    IntMatrix cup(basis.at(2).rows(), rank * rank);
    for (int a = 0; a < rank; ++a)
      for (int b = 0; b < rank; ++b) {
        auto coords = wedge_class(2, {a, b});
        for (int r = 0; r < cup.rows(); ++r)
          cup(r, a * rank + b) = coords[r];
      }
    const bool ok = equal_mod(cup, basis.at(2) * symmetric_multiplication(rank, 1, 1), q);
    res.assertions.push_back({"cup product H2 x H2 -> H4 is Sym multiplication", ok,
                              ok ? "matrix identity holds" : "cup product differs from Sym multiplication"});
  }

  if (frobenius) {
    for (const auto &[j, phi] : basis) {
      const auto lift = e1_row_endomorphism(*frobenius, j, j).at(j).to_dense();
      const IntMatrix on_classes = induced_map(classes.at(j), classes.at(j), lift);
      const IntMatrix moved = (*inverse_mod(phi, q) * on_classes * phi).reduced(q);
      const IntMatrix want = symmetric_power(*frobenius, j).reduced(q);
      res.frobenius.emplace(2 * j, moved);
      res.assertions.push_back({fmt::format("F on H^{} is Sym^{} F", 2 * j, j), moved == want, moved.str()});
    }
  }
  return res;
}

StackCohomologyResult pdivisible_stack_cohomology(int h, int p, int N, int bound, const StackOptions &opts) {
  if (h < 1 || N < 1 || bound < 0)
    throw std::invalid_argument("need h >= 1, N >= 1, bound >= 0");
  if (h > 4 || bound > opts.budget.max_degree + 2)
    throw BudgetExceeded(fmt::format("height {} with bound {} is beyond the desk budget", h, bound));
  const Integer q = ipow(p, N);
  const int top = opts.tower_top > 0 ? opts.tower_top : 2 * N + opts.window + 2;
  StackCohomologyResult res;
  res.description = fmt::format("B(Qp/Zp)^{} via levels (Z/p^n)^{}", h, h);
  res.p = p;
  res.N = N;
  res.bound = bound;
  res.tower_index = "group level n in (Z/p^n)^h";

  // cochains of (Z/p^n)^h from the product of periodic resolutions
  std::vector<std::vector<long>> orders(top + 1);
  std::vector<std::vector<Subquotient>> sq(top + 1);
  for (int n = 1; n <= top; ++n) {
    const Integer pn = ipow(p, n);
    if (!pn.fits_slong_p())
      throw BudgetExceeded("group level too large");
    orders[n].assign(h, pn.get_si());
    const auto cochains = product_resolution_complex(orders[n], bound + 1).dual();
    for (int i = 0; i <= bound; ++i)
      sq[n].push_back(homology_subquotient(cochains, i, q));
  }
  std::vector<ChainMap> restriction(top + 1);
  for (int n = 1; n < top; ++n)
    restriction[n] = product_resolution_inclusion(orders[n], orders[n + 1], bound + 1);

  for (int i = 0; i <= bound; ++i) {
    DegreeTower dt;
    dt.tower.first_index = 1;
    for (int n = 1; n <= top; ++n)
      dt.tower.levels.push_back(sq[n][i].group());
    for (int n = 1; n < top; ++n)
      dt.tower.transitions.push_back(induced_map(sq[n + 1][i], sq[n][i], restriction[n].at(i).transpose()));
    dt.tower.validate();
    attach_limit(dt, opts.window);
    if (dt.limit) {
      res.stable[i] = dt.limit->limit;
      res.cohomology[i] = dt.limit->limit;
    }
    res.towers.emplace(i, std::move(dt));
  }

  if (bound >= 1) {
    // the H^1 tower is pro-zero: some composite of transitions vanishes
    const auto &t1 = res.towers.at(1).tower;
    int k = -1;
    for (int s = 1; s < top && k < 0; ++s)
      if (tower_image(t1, top, top - s).is_zero())
        k = s;
    if (k > 0)
      res.lim1 = fmt::format("H^1 tower is zero as a pro-system: composites of {} transitions vanish, and the levels "
                             "are finite, so lim^1 H^1 = 0 and H^2 = lim H^2",
                             k);
    res.assertions.push_back({"lim1 of the H1 tower vanishes", k > 0, res.lim1.value_or("H^1 tower not pro-zero")});
  }
  for (int n = 0; n <= bound; ++n) {
    const FinAbGroup want = n % 2 ? FinAbGroup::zero() : copies(q, binomial(h + n / 2 - 1, n / 2));
    auto it = res.stable.find(n);
    const bool ok = it != res.stable.end() && it->second == want;
    res.assertions.push_back({fmt::format("H^{} = Sym^{} of W_N^{}", n, n / 2, h), ok,
                              it != res.stable.end() ? it->second.str() : res.towers.at(n).note});
  }
  return res;
}

DieudonneComparison compare_with_dieudonne(const std::string &name, int p, int N) {
  const auto entry = CatalogEntry::parse(name, p);
  if (!entry.is_etale())
    throw OutOfScope(fmt::format("{} is not etale; crystalline cohomology of its Cech levels is not implemented",
                                 entry.name()));
  DieudonneComparison cmp;
  cmp.entry = entry.name();
  cmp.p = p;
  cmp.N = N;
  const Integer q = ipow(p, N);
  const auto ring = WittRing::make(p, 1, N);
  const auto module = catalog(entry, ring);
  if (const auto *m = std::get_if<DieudonneModule>(&module)) {
    std::vector<Integer> orders;
    for (int e : m->invariant_exponents())
      orders.push_back(ipow(p, e));
    cmp.dieudonne_side = FinAbGroup::from_orders(std::span<const Integer>(orders));
  } else {
    cmp.dieudonne_side = copies(q, std::get<PDivisibleModule>(module).height());
  }
  StackCohomologyResult stack;
  if (entry.kind == CatalogEntry::Constant) {
    // degree 2 only needs cochains through degree 3; the count budget still applies
    const Integer order = ipow(p, entry.n);
    StackOptions opts;
    if (order.fits_sint_p())
      opts.budget.max_group_order = std::max(opts.budget.max_group_order, static_cast<int>(order.get_si()));
    stack = constant_group_stack_cohomology(FinAbGroup::cyclic(order), p, N, 2, opts);
  } else {
    stack = pdivisible_stack_cohomology(entry.kind == CatalogEntry::EtaleHeight ? entry.height : 1, p, N, 2);
  }
  auto it = stack.stable.find(2);
  if (it == stack.stable.end())
    throw BoundExceeded("H^2 tower did not stabilize");
  cmp.stack_side = it->second.mod(q);
  cmp.pass = cmp.stack_side == cmp.dieudonne_side;
  cmp.sigma_twist = "H^2 is M(G) up to a Frobenius twist; over F_p the twist is the identity, so the comparison is "
                    "exact";
  return cmp;
}

std::vector<AssertionOutcome> product_compatibility(const FinAbGroup &g1, const FinAbGroup &g2, int p, int N,
                                                    int max_degree) {
  StackOptions opts;
  opts.towers = false;
  const auto prod = constant_group_stack_cohomology(g1.direct_sum(g2), p, N, max_degree, opts);
  auto integral = [&](const FinAbGroup &g) {
    const auto c = alternating_face_complex(CosimplicialModule::group_cochains(g, max_degree + 2));
    GradedGroup out; // homological indexing: degree -i holds H^i
    for (int i = 0; i <= max_degree + 1; ++i)
      out[-i] = homology_at(c, i);
    return out;
  };
  const auto a = integral(g1), b = integral(g2);
  const Integer q = ipow(p, N);
  std::vector<AssertionOutcome> out;
  for (int n = 0; n <= max_degree; ++n) {
    const FinAbGroup assembled =
        kunneth(a, b, -n).mod(q).direct_sum(kunneth(a, b, -n - 1).tor(FinAbGroup::cyclic(q)));
    const auto &direct = prod.cohomology.at(n);
    out.push_back({fmt::format("Kunneth H^{}(B({} x {}))", n, g1.str(), g2.str()), direct == assembled,
                   fmt::format("direct {}, assembled {}", direct.str(), assembled.str())});
  }
  return out;
}

} // namespace crys
