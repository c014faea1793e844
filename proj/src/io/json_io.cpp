#include "crys/io/json_io.hpp"

#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace crys {

Json to_json(const Integer &n) {
  if (n.fits_slong_p())
    return n.get_si();
  return n.get_str();
}

Json to_json(const FinAbGroup &g) {
  Json t = Json::array();
  for (const auto &d : g.torsion())
    t.push_back(to_json(d));
  return {{"free_rank", g.free_rank()}, {"torsion", t}};
}

Json to_json(const IntMatrix &m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const SparseIntMatrix &m) { return to_json(m.to_dense()); }

Json to_json(const WittVector &x) {
  const auto &field = *x.ring()->field();
  Json out = Json::array();
  for (auto c : x.coords())
    out.push_back(field.coeffs(c));
  return out;
}

Json witt_header(const WittRing &ring) {
  const auto &f = *ring.field();
  return {{"p", f.p()}, {"d", f.d()}, {"N", ring.length()}, {"modulus", f.modulus()}};
}

WittVector witt_from_json(const Json &j, const WittRingPtr &ring) {
  const auto &field = *ring->field();
  if (!j.is_array() || static_cast<int>(j.size()) != ring->length())
    throw std::invalid_argument(fmt::format("expected {} Witt coordinates", ring->length()));
  std::vector<std::uint16_t> coords;
  for (const auto &c : j) {
    auto v = c.is_array() ? c.get<std::vector<int>>() : std::vector<int>{c.get<int>()};
    if (static_cast<int>(v.size()) != field.d())
      throw std::invalid_argument(fmt::format("coordinate needs {} residues", field.d()));
    for (int r : v)
      if (r < 0 || r >= field.p())
        throw std::invalid_argument(fmt::format("residue {} out of range mod {}", r, field.p()));
    coords.push_back(field.encode(v));
  }
  return ring->from_coords(std::move(coords));
}

namespace {

Json witt_matrix_json(const WittMatrix &m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

Json to_json(const DieudonneModule &m) {
  Json out = witt_header(*m.ring());
  out["invariant_factors"] = m.invariant_exponents();
  out["exponents"] = m.exponents();
  out["F"] = witt_matrix_json(m.frobenius());
  out["V"] = witt_matrix_json(m.verschiebung());
  return out;
}

Json to_json(const ChainComplex &c) {
  Json ranks = Json::array(), diffs = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    ranks.push_back(c.rank(n));
    diffs.push_back(to_json(c.outgoing(n)));
  }
  return {{"grading", c.grading() == Grading::Homological ? "homological" : "cohomological"},
          {"lo", c.lo()},
          {"hi", c.hi()},
          {"valid", {c.valid_lo(), c.valid_hi()}},
          {"ranks", ranks},
          {"differentials", diffs}};
}

Json homology_report(const std::map<int, FinAbGroup> &groups) {
  Json out = Json::object();
  for (const auto &[n, g] : groups)
    out[std::to_string(n)] = to_json(g);
  return out;
}

Json to_json(const SpectralSequencePage &page) {
  Json entries = Json::object();
  for (const auto &[ij, g] : page.entries)
    entries[fmt::format("{},{}", ij.first, ij.second)] = to_json(g);
  return {{"r", page.r}, {"entries", entries}};
}

Json to_json(const DegenerationCertificate &c) {
  Json out = {{"holds", c.holds}, {"sources_checked", c.sources_checked}, {"summary", c.str()}};
  if (c.witness)
    out["witness"] = {{"i", c.witness->i}, {"j", c.witness->j}, {"r", c.witness->r}};
  return out;
}

Json to_json(const SpectralSequenceResult &r) {
  Json pages = Json::array();
  for (const auto &p : r.pages)
    pages.push_back(to_json(p));
  Json graded = Json::object();
  for (const auto &[n, pieces] : r.graded) {
    Json a = Json::array();
    for (const auto &g : pieces)
      a.push_back(to_json(g));
    graded[std::to_string(n)] = a;
  }
  return {{"max_total", r.max_total},  {"coefficients", r.coeffs.str()},
          {"pages", pages},            {"certificate", to_json(r.certificate)},
          {"determined", r.determined}, {"status", r.status},
          {"graded", graded},          {"abutment", homology_report(r.abutment)}};
}

Json to_json(const Tower &t) {
  Json levels = Json::array(), maps = Json::array();
  for (const auto &g : t.levels)
    levels.push_back(to_json(g));
  for (const auto &m : t.transitions)
    maps.push_back(to_json(m));
  return {{"first_index", t.first_index}, {"levels", levels}, {"transitions", maps}};
}

Json to_json(const TowerLimit &l) {
  Json images = Json::array();
  for (const auto &g : l.stable_images)
    images.push_back(to_json(g));
  return {{"limit", to_json(l.limit)},
          {"lim1", to_json(l.lim1)},
          {"lim1_reason", l.lim1_reason},
          {"stable_from", l.stable_from},
          {"stable_images", images}};
}

Json to_json(const AssertionOutcome &a) { return {{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}}; }

Json to_json(const StackCohomologyResult &r) {
  Json towers = Json::object();
  for (const auto &[n, dt] : r.towers) {
    Json t = to_json(dt.tower);
    if (dt.limit)
      t["limit"] = to_json(*dt.limit);
    if (!dt.note.empty())
      t["note"] = dt.note;
    towers[std::to_string(n)] = t;
  }
  Json frob = Json::object();
  for (const auto &[n, m] : r.frobenius)
    frob[std::to_string(n)] = to_json(m);
  Json asserts = Json::array();
  for (const auto &a : r.assertions)
    asserts.push_back(to_json(a));
  Json out = {{"description", r.description},
              {"p", r.p},
              {"N", r.N},
              {"bound", r.bound},
              {"cohomology", homology_report(r.cohomology)},
              {"tower_index", r.tower_index},
              {"towers", towers},
              {"stable", homology_report(r.stable)},
              {"frobenius", frob},
              {"assertions", asserts},
              {"all_pass", r.all_pass()}};
  out["lim1"] = r.lim1 ? Json(*r.lim1) : Json();
  out["sigma_twist"] = r.sigma_twist ? Json(*r.sigma_twist) : Json();
  out["certificate"] = r.certificate ? to_json(*r.certificate) : Json();
  return out;
}

Json to_json(const DieudonneComparison &c) {
  return {{"entry", c.entry},
          {"p", c.p},
          {"N", c.N},
          {"stack_side", to_json(c.stack_side)},
          {"dieudonne_side", to_json(c.dieudonne_side)},
          {"pass", c.pass},
          {"sigma_twist", c.sigma_twist}};
}

void append_rows(GroupRows &rows, const std::string &table, const std::map<int, FinAbGroup> &groups) {
  for (const auto &[n, g] : groups)
    rows.emplace_back(table, std::to_string(n), g);
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string groups_csv(const GroupRows &rows) {
  std::ostringstream os;
  os << "table,degree,invariant_factor\n";
  for (const auto &[table, degree, g] : rows) {
    const std::string prefix = csv_field(table) + ',' + csv_field(degree) + ',';
    if (g.is_zero())
      os << prefix << '\n';
    for (const auto &d : g.torsion())
      os << prefix << d.get_str() << '\n';
    for (int k = 0; k < g.free_rank(); ++k)
      os << prefix << "0\n";
  }
  return os.str();
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace crys
