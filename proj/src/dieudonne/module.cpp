#include "crys/dieudonne/module.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace crys {

namespace {

WittVector p_power(const WittRing &ring, int k) {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), ring.p(), k);
  return ring.from_integer(q);
}

std::string vec_str(const std::vector<WittVector> &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t k = 0; k < v[i].coords().size(); ++k)
      s += (k ? "," : "") + std::to_string(v[i].coords()[k]);
    s += "]";
  }
  return s + ")";
}

std::vector<WittVector> scaled(const WittVector &c, std::vector<WittVector> v) {
  for (auto &x : v)
    x = c * x;
  return v;
}

} // namespace

DieudonneModule::DieudonneModule(WittRingPtr ring, std::vector<int> exponents, WittMatrix frobenius,
                                 WittMatrix verschiebung)
    : ring_(std::move(ring)), exponents_(std::move(exponents)), frobenius_(std::move(frobenius)),
      verschiebung_(std::move(verschiebung)) {
  const int r = num_generators();
  for (int e : exponents_)
    if (e < 1 || e > ring_->length())
      throw std::invalid_argument(fmt::format("exponent {} outside [1, {}]", e, ring_->length()));
  for (const auto *m : {&frobenius_, &verschiebung_})
    if (m->rows() != r || m->cols() != r || !m->ring()->same_as(*ring_))
      throw std::invalid_argument("F/V matrices must be square over the module's ring");
}

std::vector<WittVector> DieudonneModule::normalize(std::vector<WittVector> v) const {
  if (v.size() != exponents_.size())
    throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = v[i].truncated(exponents_[i]);
  return v;
}

std::vector<WittVector> DieudonneModule::apply_frobenius(const std::vector<WittVector> &v) const {
  std::vector<WittVector> tw;
  for (const auto &x : v)
    tw.push_back(x.frobenius());
  return normalize(frobenius_.apply(tw));
}

std::vector<WittVector> DieudonneModule::apply_verschiebung(const std::vector<WittVector> &v) const {
  std::vector<WittVector> tw;
  for (const auto &x : v)
    tw.push_back(x.inverse_frobenius());
  return normalize(verschiebung_.apply(tw));
}

std::vector<WittVector> DieudonneModule::apply(const DieudonneElement &x,
                                               const std::vector<WittVector> &v) const {
  std::vector<WittVector> out(v.size(), ring_->zero());
  for (const auto &[e, a] : x.terms()) {
    auto w = normalize(v);
    for (int k = 0; k < std::abs(e); ++k)
      w = e > 0 ? apply_frobenius(w) : apply_verschiebung(w);
    w = scaled(a, std::move(w));
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = out[i] + w[i];
  }
  return normalize(std::move(out));
}

std::vector<WittVector> DieudonneModule::generator(int i) const {
  std::vector<WittVector> v(exponents_.size(), ring_->zero());
  v.at(i) = ring_->one();
  return v;
}

std::vector<int> DieudonneModule::invariant_exponents() const {
  const int r = num_generators();
  WittMatrix rel(ring_, r, r);
  for (int i = 0; i < r; ++i)
    rel.at(i, i) = p_power(*ring_, exponents_[i]);
  return cokernel_exponents(rel);
}

DieudonneModule DieudonneModule::direct_sum(const DieudonneModule &o) const {
  const int a = num_generators(), b = o.num_generators();
  auto block = [&](const WittMatrix &x, const WittMatrix &y) {
    WittMatrix m(ring_, a + b, a + b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j)
        m.at(i, j) = x.at(i, j);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j)
        m.at(a + i, a + j) = y.at(i, j);
    return m;
  };
  auto ex = exponents_;
  ex.insert(ex.end(), o.exponents_.begin(), o.exponents_.end());
  return DieudonneModule(ring_, std::move(ex), block(frobenius_, o.frobenius_),
                         block(verschiebung_, o.verschiebung_));
}

AxiomReport check_dieudonne_axioms(const DieudonneModule &m) {
  AxiomReport rep;
  const auto &ring = m.ring();
  const int r = m.num_generators();
  auto fail = [&](std::string w) {
    rep.pass = false;
    rep.witness = std::move(w);
    return rep;
  };
  // F and V must preserve the relation submodule
  for (int j = 0; j < r; ++j) {
    const auto pe = p_power(*ring, m.exponents()[j]);
    auto rel = m.generator(j);
    rel[j] = pe;
    if (auto f = m.apply_frobenius(rel);
        std::any_of(f.begin(), f.end(), [](const WittVector &x) { return !x.is_zero(); }))
      return fail(fmt::format("F does not preserve the relation p^{} g_{}: image {}", m.exponents()[j], j,
                              vec_str(f)));
    if (auto v = m.apply_verschiebung(rel);
        std::any_of(v.begin(), v.end(), [](const WittVector &x) { return !x.is_zero(); }))
      return fail(fmt::format("V does not preserve the relation p^{} g_{}: image {}", m.exponents()[j], j,
                              vec_str(v)));
  }
  const auto p = ring->from_integer(ring->p());
  // a scalar not fixed by sigma when d > 1 (the class of x in F_p[x]/(f))
  std::vector<WittVector> scalars{ring->one()};
  if (ring->d() > 1)
    scalars.push_back(ring->teichmuller(static_cast<std::uint16_t>(ring->p())));
  for (int j = 0; j < r; ++j)
    for (const auto &c : scalars) {
      auto x = m.normalize(scaled(c, m.generator(j)));
      auto px = m.normalize(scaled(p, x));
      auto fv = m.apply_frobenius(m.apply_verschiebung(x));
      if (fv != px)
        return fail(fmt::format("FV - p != 0 on {}*g_{}: FV gives {}, p gives {}", vec_str({c}), j,
                                vec_str(fv), vec_str(px)));
      auto vf = m.apply_verschiebung(m.apply_frobenius(x));
      if (vf != px)
        return fail(fmt::format("VF - p != 0 on {}*g_{}: VF gives {}, p gives {}", vec_str({c}), j,
                                vec_str(vf), vec_str(px)));
      auto fcx = m.apply_frobenius(x);
      auto sc = m.normalize(scaled(c.frobenius(), m.apply_frobenius(m.generator(j))));
      if (fcx != sc)
        return fail(fmt::format("F(c g_{}) != sigma(c) F(g_{})", j, j));
      auto vcx = m.apply_verschiebung(x);
      auto vc = m.normalize(scaled(c.inverse_frobenius(), m.apply_verschiebung(m.generator(j))));
      if (vcx != vc)
        return fail(fmt::format("V(c g_{}) != sigma^-1(c) V(g_{})", j, j));
    }
  return rep;
}

int w_length(const DieudonneModule &m) {
  auto ex = m.invariant_exponents();
  return std::accumulate(ex.begin(), ex.end(), 0);
}

DieudonneModule quotient_module(int m, int n, const WittRingPtr &ring) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("D_n^m needs m, n >= 1");
  if (ring->length() < m + n)
    throw std::invalid_argument(fmt::format(
        "truncation would alias relations: Witt length {} < m + n = {}", ring->length(), m + n));
  const int r = m + n - 1;
  // index of X^e, e in [-(n-1), m-1]
  auto idx = [&](int e) { return e + n - 1; };
  std::vector<int> ex(r);
  for (int e = -(n - 1); e <= m - 1; ++e)
    ex[idx(e)] = e >= 0 ? std::min(m - e, n) : std::min(n + e, m);
  WittMatrix F(ring, r, r), V(ring, r, r);
  const auto p = ring->from_integer(ring->p());
  for (int e = -(n - 1); e <= m - 1; ++e) {
    // F X^e
    if (e < 0)
      F.at(idx(e + 1), idx(e)) = p;
    else if (e + 1 <= m - 1)
      F.at(idx(e + 1), idx(e)) = ring->one();
    // V X^e
    if (e > 0)
      V.at(idx(e - 1), idx(e)) = p;
    else if (e - 1 >= -(n - 1))
      V.at(idx(e - 1), idx(e)) = ring->one();
  }
  return DieudonneModule(ring, std::move(ex), std::move(F), std::move(V));
}

int presentation_length(int m, int n, const WittRingPtr &ring) {
  const int L = m + n;
  const int gens = 2 * L + 1;
  std::vector<std::pair<int, int>> rels; // (target exponent, power of p)
  for (int i = -L; i <= L; ++i) {
    // X^i F^m and X^i V^n
    for (int s : {m, -n}) {
      const int k = (i > 0 && s < 0) || (i < 0 && s > 0) ? std::min(std::abs(i), std::abs(s)) : 0;
      const int t = i + s;
      if (t >= -L && t <= L)
        rels.emplace_back(t, k);
    }
  }
  WittMatrix pres(ring, gens, static_cast<int>(rels.size()));
  for (std::size_t c = 0; c < rels.size(); ++c)
    if (rels[c].second < ring->length())
      pres.at(rels[c].first + L, static_cast<int>(c)) = p_power(*ring, rels[c].second);
  auto ex = cokernel_exponents(pres);
  return std::accumulate(ex.begin(), ex.end(), 0);
}

bool quotient_module_stable(int m, int n, const WittRingPtr &ring) {
  auto up = WittRing::make(ring->field(), ring->length() + 1);
  auto a = quotient_module(m, n, ring);
  auto b = quotient_module(m, n, up);
  return a.exponents() == b.exponents() && a.frobenius() == b.frobenius().rebased(ring) &&
         a.verschiebung() == b.verschiebung().rebased(ring) &&
         presentation_length(m, n, ring) == presentation_length(m, n, up);
}

bool PDivisibleModule::satisfies_pd_in_fd() const {
  auto ex = frobenius_cokernel();
  return std::all_of(ex.begin(), ex.end(), [](int e) { return e <= 1; });
}

} // namespace crys
