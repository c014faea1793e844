#include "crys/verify/acceptance.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "crys/barstack/bar.hpp"
#include "crys/barstack/cyclic.hpp"
#include "crys/barstack/simplicial.hpp"
#include "crys/dieudonne/catalog.hpp"
#include "crys/dieudonne/module.hpp"
#include "crys/dieudonne/ring.hpp"
#include "crys/errors.hpp"
#include "crys/exactalg/witt.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/kunneth.hpp"
#include "crys/specseq/contraction.hpp"
#include "crys/specseq/e1_row.hpp"
#include "crys/specseq/multilinear.hpp"
#include "crys/stackcoh/stack_cohomology.hpp"

namespace crys {

std::string CriterionResult::line() const {
  std::string s = fmt::format("[{}] {:>2} {}", pass ? "PASS" : "FAIL", id, title);
  for (const auto &c : checks)
    if (!c.pass) {
      s += fmt::format(" -- {}: {}", c.name, c.detail);
      break;
    }
  return s;
}

namespace {

using Rng = std::mt19937_64;

struct Recorder {
  std::vector<CheckOutcome> checks;
  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  // one summary check for a family, keeping the first failure's detail
  struct Family {
    Recorder &r;
    std::string name;
    long count = 0;
    std::string failure;
    void check(bool ok, const std::function<std::string()> &why) {
      ++count;
      if (!ok && failure.empty())
        failure = why();
    }
    ~Family() {
      r.add(name, failure.empty(), failure.empty() ? fmt::format("{} cases", count) : failure);
    }
  };
  Family family(std::string name) { return Family{*this, std::move(name), 0, {}}; }
};

Integer ipow(long p, int k) {
  Integer r = 1;
  while (k-- > 0)
    r *= p;
  return r;
}

std::string witt_str(const WittVector &x) { return dump(to_json(x)).substr(0, 80); }

WittVector random_witt(const WittRingPtr &R, Rng &rng) {
  std::uniform_int_distribution<int> dist(0, R->field()->order() - 1);
  std::vector<std::uint16_t> c(R->length());
  for (auto &x : c)
    x = static_cast<std::uint16_t>(dist(rng));
  return R->from_coords(c);
}

void witt_soundness(Recorder &rec, Rng &rng) {
  std::vector<WittRingPtr> rings;
  for (int p : {2, 3, 5})
    for (int d = 1; d <= 2; ++d)
      for (int N = 1; N <= 4; ++N)
        rings.push_back(WittRing::make(p, d, N));
  {
    auto fam = rec.family("ring axioms on 1000 random triples");
    std::uniform_int_distribution<std::size_t> pick(0, rings.size() - 1);
    for (int t = 0; t < 1000; ++t) {
      const auto &R = rings[pick(rng)];
      const auto a = random_witt(R, rng), b = random_witt(R, rng), c = random_witt(R, rng);
      const auto where = [&] {
        return fmt::format("p={} d={} N={} a={} b={} c={}", R->p(), R->d(), R->length(), witt_str(a), witt_str(b),
                           witt_str(c));
      };
      fam.check((a + b) + c == a + (b + c), where);
      fam.check((a * b) * c == a * (b * c), where);
      fam.check(a + b == b + a && a * b == b * a, where);
      fam.check(a * (b + c) == a * b + a * c, where);
      fam.check(a + R->zero() == a && a * R->one() == a, where);
      fam.check((a + a.negate()).is_zero(), where);
    }
  }
  {
    auto fam = rec.family("FV = VF = p exhaustively, p = 2, N <= 3, d <= 2");
    for (int d = 1; d <= 2; ++d)
      for (int N = 1; N <= 3; ++N) {
        const auto R = WittRing::make(2, d, N);
        const auto p = R->from_integer(2);
        const int q = R->field()->order();
        long total = 1;
        for (int i = 0; i < N; ++i)
          total *= q;
        for (long code = 0; code < total; ++code) {
          std::vector<std::uint16_t> c(N);
          long x = code;
          for (auto &ci : c) {
            ci = static_cast<std::uint16_t>(x % q);
            x /= q;
          }
          const auto w = R->from_coords(c);
          fam.check(w.frobenius().verschiebung() == p * w && w.verschiebung().frobenius() == p * w,
                    [&] { return fmt::format("d={} N={} x={}", d, N, witt_str(w)); });
        }
      }
  }
}

DieudonneWord random_word(const WittRingPtr &R, Rng &rng) {
  std::uniform_int_distribution<int> len(0, 6), kind(0, 2), code(0, R->field()->order() - 1), mult(-3, 3),
      terms(1, 3);
  DieudonneWord w;
  const int t = terms(rng);
  for (int s = 0; s < t; ++s) {
    DieudonneWord::Product p;
    p.multiplicity = mult(rng);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      const int k = kind(rng);
      if (k == 2) {
        std::vector<std::uint16_t> c(R->length());
        for (auto &x : c)
          x = static_cast<std::uint16_t>(code(rng));
        p.letters.push_back({DieudonneLetter::Scalar, c});
      } else {
        p.letters.push_back({k == 0 ? DieudonneLetter::F : DieudonneLetter::V, {}});
      }
    }
    w.summands.push_back(std::move(p));
  }
  return w;
}

DieudonneWord concat(const DieudonneWord &a, const DieudonneWord &b) {
  DieudonneWord r;
  for (const auto &x : a.summands)
    for (const auto &y : b.summands) {
      DieudonneWord::Product p{x.multiplicity * y.multiplicity, x.letters};
      p.letters.insert(p.letters.end(), y.letters.begin(), y.letters.end());
      r.summands.push_back(std::move(p));
    }
  return r;
}

void dieudonne_canonical_forms(Recorder &rec, Rng &rng) {
  {
    auto fam = rec.family("500 random words reduce idempotently and multiplicatively");
    const std::vector<WittRingPtr> rings = {WittRing::make(2, 1, 3), WittRing::make(3, 2, 2), WittRing::make(5, 1, 2)};
    std::uniform_int_distribution<std::size_t> pick(0, rings.size() - 1);
    for (int t = 0; t < 500; ++t) {
      const auto &R = rings[pick(rng)];
      const auto a = random_word(R, rng), b = random_word(R, rng);
      const auto ca = canonical_form(a, R), cb = canonical_form(b, R);
      const auto where = [&] { return fmt::format("p={} word {} times {}", R->p(), ca.str(), cb.str()); };
      fam.check(canonical_form(to_word(ca), R) == ca, where);
      fam.check(canonical_form(concat(a, b), R) == ca * cb, where);
    }
  }
  for (int p : {2, 3, 5}) {
    const auto R = WittRing::make(p, 1, 3);
    const auto lhs = canonical_form("(F+V)^2", R), rhs = canonical_form("F^2 + 2p + V^2", R);
    rec.add(fmt::format("(F+V)^2 = F^2 + 2p + V^2 at p = {}", p), lhs == rhs, lhs.str());
  }
}

void witt_kernel_lengths(Recorder &rec) {
  auto fam = rec.family("w_length of D_n^m is n*m with N = n+m+1, stable at N+1");
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) {
        const auto R = WittRing::make(p, 1, n + m + 1);
        const int len = w_length(quotient_module(m, n, R));
        fam.check(len == n * m, [&] { return fmt::format("p={} n={} m={}: length {}", p, n, m, len); });
        fam.check(quotient_module_stable(m, n, R),
                  [&] { return fmt::format("p={} n={} m={}: changes at N+1", p, n, m); });
      }
}

// integral group homology through degree `top`, cached by group
class BarCache {
public:
  const std::map<int, FinAbGroup> &get(const FinAbGroup &g, int top) {
    const auto key = g.str();
    auto it = cache_.find(key);
    if (it == cache_.end() || it->second.first < top) {
      BarOptions o;
      o.normalized = true;
      auto h = homology(bar_complex(g, top + 1, o));
      it = cache_.insert_or_assign(key, std::pair{top, std::move(h)}).first;
    }
    return it->second.second;
  }

private:
  std::map<std::string, std::pair<int, std::map<int, FinAbGroup>>> cache_;
};

BarCache &bar_cache() {
  static BarCache c;
  return c;
}

void group_homology_corpus(Recorder &rec) {
  {
    auto fam = rec.family("bar complex = periodic resolution, orders 2..6, degrees <= 4");
    for (long n = 2; n <= 6; ++n) {
      const auto &hb = bar_cache().get(FinAbGroup::cyclic(n), 4);
      const auto hr = cyclic_resolution_homology(n, {}, 4);
      for (int i = 0; i <= 4; ++i)
        fam.check(hb.at(i) == hr.at(i), [&] {
          return fmt::format("order {} degree {}: {} vs {}", n, i, hb.at(i).str(), hr.at(i).str());
        });
    }
  }
  auto fam = rec.family("Kunneth with Tor reproduces products, orders <= 4, degrees <= 3");
  for (long a = 2; a <= 4; ++a)
    for (long b = a; b <= 4; ++b) {
      const auto ha = cyclic_resolution_homology(a, {}, 3), hb = cyclic_resolution_homology(b, {}, 3);
      const auto &hab = bar_cache().get(FinAbGroup::from_orders({a, b}), 3);
      for (int n = 0; n <= 3; ++n) {
        const auto k = kunneth(ha, hb, n);
        fam.check(k == hab.at(n), [&] {
          return fmt::format("Z/{} x Z/{} degree {}: {} vs {}", a, b, n, k.str(), hab.at(n).str());
        });
      }
    }
}

void low_degree_homology(Recorder &rec) {
  auto fam = rec.family("H0 = Z, H1 = G, H2 = G ^ G, abelian p-groups of order <= 16");
  for (const auto &g : abelian_p_groups(16)) {
    const auto &h = bar_cache().get(g, 3);
    const auto want2 = exterior_square(g);
    fam.check(h.at(0) == FinAbGroup::free(1) && h.at(1) == g && h.at(2) == want2, [&] {
      return fmt::format("{}: H0 {}, H1 {}, H2 {} (want {})", g.str(), h.at(0).str(), h.at(1).str(), h.at(2).str(),
                         want2.str());
    });
  }
}

void killed_by_order(Recorder &rec) {
  auto fam = rec.family("invariant factors of H1..H3 divide |G|");
  for (const auto &g : abelian_p_groups(16)) {
    const auto &h = bar_cache().get(g, 3);
    const Integer order = g.order();
    for (int i = 1; i <= 3; ++i) {
      bool ok = h.at(i).is_finite();
      for (const auto &d : h.at(i).torsion())
        ok = ok && order % d == 0;
      fam.check(ok, [&] { return fmt::format("{} degree {}: {}", g.str(), i, h.at(i).str()); });
    }
  }
}

void contraction_identity(Recorder &rec) {
  auto fam = rec.family("closed-form d_n, d^2 = 0, dh + hd = id - e; rank <= 4, degrees <= 8, N <= 3");
  for (int rank = 1; rank <= 4; ++rank)
    for (long p : {2L, 3L})
      for (int N = 0; N <= 3; ++N) {
        if (p == 3 && N == 0)
          continue;
        const Integer q = N == 0 ? Integer(0) : ipow(p, N);
        const auto r = hom_complex_and_contraction(rank, 8, q);
        fam.check(r.pass, [&] { return fmt::format("rank {} modulus {}: {}", rank, q.get_str(), r.message); });
      }
}

void decalage(Recorder &rec) {
  auto fam = rec.family("row j has Sym^j in degree j only, rank C(r+j-1, j); r in {1,2,4}, j <= 3");
  for (int rank : {1, 2, 4})
    for (int j = 0; j <= 3; ++j)
      for (const auto &coeffs : {Coefficients::integers(), Coefficients::witt(2, 2), Coefficients::witt(3, 1)}) {
        const auto r = decalage_check(rank, j, j + 3, coeffs);
        fam.check(r.pass, [&] { return fmt::format("rank {} j {} {}: {}", rank, j, coeffs.str(), r.message); });
      }
}

void assertions_to(Recorder &rec, const std::string &prefix, const std::vector<AssertionOutcome> &as) {
  for (const auto &a : as)
    rec.add(prefix + a.name, a.pass, a.detail);
}

void abelian_model(Recorder &rec) {
  const auto r = abelian_model_stack_cohomology(1, 2, 2, 6);
  const std::map<int, FinAbGroup> want = {
      {0, FinAbGroup::from_orders({4})},          {1, FinAbGroup::zero()}, {2, FinAbGroup::from_orders({4, 4})},
      {3, FinAbGroup::zero()},                    {4, FinAbGroup::from_orders({4, 4, 4})},
      {5, FinAbGroup::zero()},                    {6, FinAbGroup::from_orders({4, 4, 4, 4})}};
  for (const auto &[n, g] : want) {
    auto it = r.cohomology.find(n);
    rec.add(fmt::format("H^{} = {}", n, g.str()), it != r.cohomology.end() && it->second == g,
            it != r.cohomology.end() ? it->second.str() : "missing");
  }
  rec.add("degeneration certificate", r.certificate && r.certificate->holds,
          r.certificate ? r.certificate->str() : "missing");
  assertions_to(rec, "", r.assertions);
}

void etale_constant(Recorder &rec) {
  const int N = 3;
  for (int p : {2, 3})
    for (int m = 1; m <= 3; ++m) {
      const auto g = FinAbGroup::cyclic(ipow(p, m));
      const std::string tag = fmt::format("Z/{}: ", g.order().get_str());
      StackOptions opts;
      opts.budget.max_group_order = 27;
      const auto r = constant_group_stack_cohomology(g, p, N, 2, opts);
      auto h2 = r.stable.find(2);
      rec.add(tag + "stable H^2 = Z/p^m", h2 != r.stable.end() && h2->second == g,
              h2 != r.stable.end() ? h2->second.str() : r.towers.at(2).note);
      auto h1 = r.stable.find(1);
      rec.add(tag + "H^1 stable limit = 0", h1 != r.stable.end() && h1->second.is_zero(),
              h1 != r.stable.end() ? h1->second.str() : r.towers.at(1).note);
      const auto cmp = compare_with_dieudonne(fmt::format("constant(p^{})", m), p, N);
      rec.add(tag + "H^2 = M(G) at W_3", cmp.pass,
              fmt::format("stack {}, module {}", cmp.stack_side.str(), cmp.dieudonne_side.str()));
      assertions_to(rec, tag, bockstein_identity(r, 3));
    }
}

void etale_pdivisible(Recorder &rec) {
  for (int p : {2, 3})
    for (int h = 1; h <= 2; ++h)
      for (int N = 1; N <= 2; ++N) {
        const std::string tag = fmt::format("p={} h={} N={}: ", p, h, N);
        const auto r = pdivisible_stack_cohomology(h, p, N, 4);
        const Integer q = ipow(p, N);
        std::vector<Integer> h2(h, q), h4(binomial(h + 1, 2), q);
        const auto want2 = FinAbGroup::from_orders(std::span<const Integer>(h2));
        const auto want4 = FinAbGroup::from_orders(std::span<const Integer>(h4));
        auto s2 = r.stable.find(2), s4 = r.stable.find(4);
        rec.add(tag + "H^2 = W_N^h", s2 != r.stable.end() && s2->second == want2,
                s2 != r.stable.end() ? s2->second.str() : r.towers.at(2).note);
        rec.add(tag + "lim^1 = 0 reported", r.lim1.has_value(), r.lim1.value_or("missing"));
        rec.add(tag + "H^4 = Sym^2", s4 != r.stable.end() && s4->second == want4,
                s4 != r.stable.end() ? s4->second.str() : r.towers.at(4).note);
      }
}

void eilenberg_maclane(Recorder &rec) {
  const auto k = kan_classifying(FinAbGroup::cyclic(2), 2, 3);
  const auto h = homology(k.complex);
  const std::vector<FinAbGroup> want = {FinAbGroup::free(1), FinAbGroup::zero(), FinAbGroup::cyclic(2),
                                        FinAbGroup::zero()};
  for (int n = 0; n <= 3; ++n)
    rec.add(fmt::format("H_{} = {}", n, want[n].str()), h.at(n) == want[n], h.at(n).str());
  rec.add("degrees <= 3 within the verified range", k.verified_through >= 3,
          fmt::format("verified through {}", k.verified_through));
}

struct CriterionDef {
  const char *title;
  const char *reference;
  std::function<void(Recorder &, Rng &)> run;
};

const std::map<int, CriterionDef> &criteria() {
  static const std::map<int, CriterionDef> s = {
      {1,
       {"Witt ring soundness", "truncated Witt vectors form a commutative ring with FV = VF = p",
        [](Recorder &r, Rng &g) { witt_soundness(r, g); }}},
      {2,
       {"Dieudonne ring canonical forms", "relations FV = VF = p and Fc = sigma(c)F give unique normal forms",
        [](Recorder &r, Rng &g) { dieudonne_canonical_forms(r, g); }}},
      {3,
       {"M(W_n^m) has length n*m", "the Dieudonne module of the Witt kernel W_n^m is D/(F^m, V^n)",
        [](Recorder &r, Rng &) { witt_kernel_lengths(r); }}},
      {4,
       {"group homology corpus", "bar complex homology and the Kunneth formula with Tor",
        [](Recorder &r, Rng &) { group_homology_corpus(r); }}},
      {5,
       {"H0 = Z, H1 = G, H2 = G ^ G", "low-degree homology of finite abelian groups",
        [](Recorder &r, Rng &) { low_degree_homology(r); }}},
      {6,
       {"homology killed by |G|", "positive-degree homology of G is annihilated by its order",
        [](Recorder &r, Rng &) { killed_by_order(r); }}},
      {7,
       {"contraction identity", "explicit differentials and homotopies for the Hom complex of the first row",
        [](Recorder &r, Rng &) { contraction_identity(r); }}},
      {8,
       {"decalage", "exterior powers of a shifted module are shifted symmetric powers",
        [](Recorder &r, Rng &) { decalage(r); }}},
      {9,
       {"abelian model H^* = Sym^*", "even cohomology of BA is Sym of H^1, odd cohomology vanishes",
        [](Recorder &r, Rng &) { abelian_model(r); }}},
      {10,
       {"etale constant groups", "H^2 of BG is the Dieudonne module, H^1 vanishes, Bockstein sequence",
        [](Recorder &r, Rng &) { etale_constant(r); }}},
      {11,
       {"etale p-divisible groups", "H^2 is the limit over levels with vanishing lim^1, H^4 = Sym^2",
        [](Recorder &r, Rng &) { etale_pdivisible(r); }}},
      {12,
       {"K(Z/2, 2) through degree 3", "iterated classifying construction models Eilenberg-MacLane spaces",
        [](Recorder &r, Rng &) { eilenberg_maclane(r); }}},
  };
  return s;
}

} // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const auto &[id, s] : criteria())
    ids.push_back(id);
  return ids;
}

std::vector<int> parse_suite(const std::string &suite) {
  static const std::map<std::string, std::vector<int>> groups = {{"witt", {1}},          {"dieudonne", {2, 3}},
                                                                 {"homology", {4, 5, 6, 12}}, {"specseq", {7, 8}},
                                                                 {"stackcoh", {9, 10, 11}}};
  if (suite == "all")
    return criterion_ids();
  if (auto it = groups.find(suite); it != groups.end())
    return it->second;
  std::vector<int> ids;
  std::stringstream ss(suite);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(tok, &used);
      if (used != tok.size())
        id = 0;
    } catch (const std::exception &) {
    }
    if (!criteria().count(id))
      throw std::invalid_argument(fmt::format("unknown suite or criterion '{}'", tok));
    ids.push_back(id);
  }
  if (ids.empty())
    throw std::invalid_argument("empty suite");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

CriterionResult run_criterion(int id, const VerifyOptions &opts) {
  const auto it = criteria().find(id);
  if (it == criteria().end())
    throw std::invalid_argument(fmt::format("no criterion {}", id));
  CriterionResult res;
  res.id = id;
  res.title = it->second.title;
  res.reference = it->second.reference;
  Recorder rec;
  // each criterion draws from its own stream so subsets reproduce the full run
  Rng rng(opts.seed + static_cast<std::uint64_t>(id));
  try {
    it->second.run(rec, rng);
  } catch (const std::exception &e) {
    rec.add("completed without error", false, e.what());
  }
  res.checks = std::move(rec.checks);
  res.pass = !res.checks.empty() &&
             std::all_of(res.checks.begin(), res.checks.end(), [](const CheckOutcome &c) { return c.pass; });
  return res;
}

std::vector<CriterionResult> run_suite(const std::vector<int> &ids, const VerifyOptions &opts) {
  std::vector<CriterionResult> out;
  for (int id : ids)
    out.push_back(run_criterion(id, opts));
  return out;
}

std::vector<FinAbGroup> abelian_p_groups(long max_order) {
  std::vector<FinAbGroup> out;
  for (long p = 2; p <= max_order; ++p) {
    bool prime = true;
    for (long d = 2; d * d <= p; ++d)
      prime = prime && p % d != 0;
    if (!prime)
      continue;
    int top = 0;
    for (long q = p; q <= max_order; q *= p)
      ++top;
    // partitions of each n <= top, parts in non-increasing order
    std::function<void(int, int, std::vector<long> &)> parts = [&](int left, int cap, std::vector<long> &cur) {
      if (left == 0) {
        std::vector<long> orders;
        for (long e : cur)
          orders.push_back(ipow(p, static_cast<int>(e)).get_si());
        std::vector<Integer> big(orders.begin(), orders.end());
        out.push_back(FinAbGroup::from_orders(std::span<const Integer>(big)));
        return;
      }
      for (int e = std::min(left, cap); e >= 1; --e) {
        cur.push_back(e);
        parts(left - e, e, cur);
        cur.pop_back();
      }
    };
    for (int n = 1; n <= top; ++n) {
      std::vector<long> cur;
      parts(n, n, cur);
    }
  }
  return out;
}

Json report_json(const std::vector<CriterionResult> &results, const VerifyOptions &opts) {
  Json crit = Json::array();
  bool all = true;
  for (const auto &r : results) {
    Json checks = Json::array();
    for (const auto &c : r.checks)
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    crit.push_back({{"id", r.id}, {"title", r.title}, {"reference", r.reference}, {"pass", r.pass}, {"checks", checks}});
    all = all && r.pass;
  }
  return {{"seed", opts.seed}, {"criteria", crit}, {"pass", all}};
}

} // namespace crys
