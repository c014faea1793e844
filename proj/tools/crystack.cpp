#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "crys/barstack/bar.hpp"
#include "crys/barstack/simplicial.hpp"
#include "crys/dieudonne/catalog.hpp"
#include "crys/dieudonne/ring.hpp"
#include "crys/errors.hpp"
#include "crys/exactalg/witt.hpp"
#include "crys/exactalg/witt_poly.hpp"
#include "crys/homology/homology.hpp"
#include "crys/io/json_io.hpp"
#include "crys/specseq/cosimplicial.hpp"
#include "crys/specseq/e1_row.hpp"
#include "crys/stackcoh/oracle.hpp"
#include "crys/stackcoh/stack_cohomology.hpp"
#include "crys/verify/acceptance.hpp"

using namespace crys;

namespace {

constexpr int kUsage = 2;
constexpr int kFailed = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int p = 2;
  int d = 1;
  int N = 1;
  std::string group;
  int max_degree = 2;
  std::string format = "json";
  bool json = false, csv = false;
  int max_order = 16;
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t seed = 20240611;
  std::string out;

  // witt
  std::string op = "add", x, y;
  int code = 0;
  std::string value;
  // dieudonne
  std::string word, entry;
  // group-homology
  std::string coeff_mod;
  bool normalized = false, emit_complex = false;
  int iterations = 1;
  // specseq / stack-cohomology
  std::string model = "abelian";
  int genus = 1;
  std::optional<int> abelian, pdivisible;
  std::string constant_group, compare, product, frobenius;
  int tower_top = 0, window = 3;
  // verify
  std::string suite = "all", report = "report.json";
};

bool is_prime(int p) {
  if (p < 2)
    return false;
  for (int k = 2; k * k <= p; ++k)
    if (p % k == 0)
      return false;
  return true;
}

std::vector<long> parse_orders(const std::string &text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.size() || v < 1)
      throw UsageError(fmt::format("bad invariant factor '{}' in '{}'", tok, text));
    out.push_back(v);
  }
  if (out.empty())
    throw UsageError("empty group specification");
  return out;
}

FinAbGroup parse_group(const std::string &text) {
  std::vector<Integer> o;
  for (long v : parse_orders(text))
    o.emplace_back(v);
  return FinAbGroup::from_orders(std::span<const Integer>(o));
}

// "a,b;c,d" row by row
IntMatrix parse_matrix(const std::string &text) {
  std::vector<std::vector<long>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<long> r;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ','))
      r.push_back(std::stol(tok));
    rows.push_back(r);
  }
  if (rows.empty() || std::any_of(rows.begin(), rows.end(), [&](auto &r) { return r.size() != rows[0].size(); }))
    throw UsageError(fmt::format("bad matrix '{}'", text));
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      m(i, j) = rows[i][j];
  return m;
}

void validate(const RunConfig &c) {
  if (!is_prime(c.p))
    throw UsageError(fmt::format("p = {} is not prime", c.p));
  if (c.N < 1 || c.d < 1 || c.max_degree < 0 || c.max_order < 1 || c.budget < 1)
    throw UsageError("need N >= 1, d >= 1, bound >= 0 and positive budgets");
  if (c.json && c.csv)
    throw UsageError("--json and --csv are exclusive");
}

std::string format_of(const RunConfig &c) { return c.csv ? "csv" : c.json ? "json" : c.format; }

BarOptions bar_options(const RunConfig &c) {
  BarOptions o;
  o.normalized = c.normalized;
  o.max_group_order = c.max_order;
  o.max_degree = std::max(o.max_degree, c.max_degree + 1);
  o.budget = c.budget;
  return o;
}

struct Emitted {
  Json json;
  GroupRows rows;
  bool csv_ok = true;
  bool pass = true;
};

Emitted run_witt(const RunConfig &c) {
  Emitted e;
  e.csv_ok = false;
  if (c.op == "ghost") {
    Json xs = Json::parse(c.x.empty() ? "[]" : c.x);
    std::vector<Integer> v;
    for (const auto &t : xs)
      v.emplace_back(t.is_string() ? t.get<std::string>() : std::to_string(t.get<long>()));
    Json w = Json::array();
    for (const auto &g : ghost_components(v, c.p))
      w.push_back(to_json(g));
    e.json = {{"op", "ghost"}, {"p", c.p}, {"x", xs}, {"ghost", w}};
    return e;
  }
  const auto R = WittRing::make(c.p, c.d, c.N);
  auto arg = [&](const std::string &s, const char *name) {
    if (s.empty())
      throw UsageError(fmt::format("--op {} needs --{}", c.op, name));
    return witt_from_json(Json::parse(s), R);
  };
  WittVector r = R->zero();
  if (c.op == "add")
    r = arg(c.x, "x") + arg(c.y, "y");
  else if (c.op == "mul")
    r = arg(c.x, "x") * arg(c.y, "y");
  else if (c.op == "neg")
    r = arg(c.x, "x").negate();
  else if (c.op == "frobenius")
    r = arg(c.x, "x").frobenius();
  else if (c.op == "verschiebung")
    r = arg(c.x, "x").verschiebung();
  else if (c.op == "teichmuller") {
    if (c.code < 0 || c.code >= R->field()->order())
      throw UsageError(fmt::format("field code {} out of range", c.code));
    r = R->teichmuller(static_cast<std::uint16_t>(c.code));
  } else if (c.op == "integer")
    r = R->from_integer(Integer(c.value.empty() ? "0" : c.value));
  else
    throw UsageError(fmt::format("unknown witt op '{}'", c.op));
  e.json = {{"header", witt_header(*R)}, {"op", c.op}, {"result", to_json(r)}};
  return e;
}

Emitted run_dieudonne(const RunConfig &c) {
  Emitted e;
  const auto R = WittRing::make(c.p, c.d, c.N);
  if (!c.word.empty() == !c.entry.empty())
    throw UsageError("dieudonne needs exactly one of --word and --catalog");
  if (!c.word.empty()) {
    e.csv_ok = false;
    const auto x = canonical_form(c.word, R);
    Json terms = Json::object();
    for (const auto &[k, a] : x.terms())
      terms[std::to_string(k)] = to_json(a);
    e.json = {{"header", witt_header(*R)}, {"word", c.word}, {"canonical", x.str()}, {"terms", terms}};
    return e;
  }
  const auto entry = CatalogEntry::parse(c.entry, c.p);
  const auto mod = catalog(entry, R);
  e.json = {{"entry", entry.name()}, {"etale", entry.is_etale()}};
  if (const auto *m = std::get_if<DieudonneModule>(&mod)) {
    e.json["module"] = to_json(*m);
    std::vector<Integer> orders;
    for (int x : m->invariant_exponents()) {
      Integer q = 1;
      for (int k = 0; k < x; ++k)
        q *= c.p;
      orders.push_back(q);
    }
    e.rows.emplace_back("M", "", FinAbGroup::from_orders(std::span<const Integer>(orders)));
  } else {
    const auto &pd = std::get<PDivisibleModule>(mod);
    WittMatrix f = pd.frobenius;
    Json fm = Json::array();
    for (int i = 0; i < f.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < f.cols(); ++j)
        row.push_back(to_json(f.at(i, j)));
      fm.push_back(row);
    }
    e.json["p_divisible"] = {{"header", witt_header(*R)}, {"height", pd.height()}, {"F", fm},
                             {"pD_in_FD", pd.satisfies_pd_in_fd()}};
    e.csv_ok = false;
  }
  return e;
}

Emitted run_group_homology(const RunConfig &c) {
  if (c.group.empty())
    throw UsageError("group-homology needs --group");
  const auto g = parse_group(c.group);
  Coefficients coeffs;
  if (!c.coeff_mod.empty())
    coeffs = Coefficients::mod(Integer(c.coeff_mod));
  ChainComplex complex;
  if (c.iterations == 1) {
    complex = bar_complex(g, c.max_degree + 1, bar_options(c));
  } else {
    if (c.iterations < 1)
      throw UsageError("--iterations must be >= 1");
    complex = kan_classifying(g, c.iterations, c.max_degree, c.budget).complex;
  }
  std::map<int, FinAbGroup> h;
  for (int n = 0; n <= c.max_degree; ++n)
    h[n] = homology_at(complex, n, coeffs);
  Emitted e;
  e.json = {{"group", g.str()},
            {"iterations", c.iterations},
            {"coefficients", coeffs.str()},
            {"max_degree", c.max_degree},
            {"homology", homology_report(h)}};
  if (c.emit_complex)
    e.json["complex"] = to_json(complex);
  append_rows(e.rows, "H", h);
  return e;
}

Emitted run_specseq(const RunConfig &c) {
  std::vector<ChainComplex> rows;
  if (c.model == "abelian") {
    const AbelianModelOracle o(2 * c.genus);
    for (int j = 0; j <= c.max_degree; ++j)
      rows.push_back(alternating_face_complex(o.row(j, c.max_degree + 2 - j)));
  } else if (c.model == "constant") {
    if (c.group.empty())
      throw UsageError("--model constant needs --group");
    const ConstantGroupOracle o(parse_group(c.group));
    rows.push_back(alternating_face_complex(o.row(0, c.max_degree + 1)));
    for (int j = 1; j <= c.max_degree; ++j)
      rows.push_back(zero_row(c.max_degree + 1));
  } else {
    throw UsageError(fmt::format("unknown model '{}'", c.model));
  }
  const auto r = run_spectral_sequence(rows, c.max_degree, Coefficients::witt(c.p, c.N));
  Emitted e;
  e.json = to_json(r);
  e.json["model"] = c.model;
  for (const auto &page : r.pages)
    for (const auto &[ij, g] : page.entries)
      e.rows.emplace_back(fmt::format("E{}", page.r), fmt::format("{},{}", ij.first, ij.second), g);
  append_rows(e.rows, "H", r.abutment);
  return e;
}

Emitted run_stack(const RunConfig &c) {
  const int modes = !c.constant_group.empty() + c.abelian.has_value() + c.pdivisible.has_value() + !c.compare.empty();
  if (modes != 1)
    throw UsageError("stack-cohomology needs exactly one of --constant-group, --abelian, --pdivisible, --compare");
  StackOptions opts;
  opts.tower_top = c.tower_top;
  opts.window = c.window;
  opts.budget = bar_options(c);
  Emitted e;
  if (!c.compare.empty()) {
    const auto cmp = compare_with_dieudonne(c.compare, c.p, c.N);
    e.json = to_json(cmp);
    e.rows.emplace_back("stack", "2", cmp.stack_side);
    e.rows.emplace_back("dieudonne", "2", cmp.dieudonne_side);
    e.pass = cmp.pass;
    return e;
  }
  StackCohomologyResult r;
  if (!c.constant_group.empty()) {
    const auto g = parse_group(c.constant_group);
    if (!c.product.empty()) {
      const auto outcomes = product_compatibility(g, parse_group(c.product), c.p, c.N, c.max_degree);
      Json a = Json::array();
      for (const auto &o : outcomes) {
        a.push_back(to_json(o));
        e.pass = e.pass && o.pass;
      }
      e.json = {{"product", {g.str(), parse_group(c.product).str()}}, {"p", c.p}, {"N", c.N}, {"assertions", a}};
      e.csv_ok = false;
      return e;
    }
    r = constant_group_stack_cohomology(g, c.p, c.N, c.max_degree, opts);
  } else if (c.abelian) {
    std::optional<IntMatrix> f;
    if (!c.frobenius.empty())
      f = parse_matrix(c.frobenius);
    r = abelian_model_stack_cohomology(*c.abelian, c.p, c.N, c.max_degree, f);
  } else {
    r = pdivisible_stack_cohomology(*c.pdivisible, c.p, c.N, c.max_degree, opts);
  }
  e.json = to_json(r);
  e.pass = r.all_pass();
  append_rows(e.rows, "H", r.cohomology);
  append_rows(e.rows, "stable", r.stable);
  return e;
}

int run_verify(const RunConfig &c) {
  VerifyOptions vo;
  vo.seed = c.seed;
  const auto ids = parse_suite(c.suite);
  std::vector<CriterionResult> results;
  for (int id : ids) {
    results.push_back(run_criterion(id, vo));
    std::cout << results.back().line() << std::endl;
  }
  const Json report = report_json(results, vo);
  std::ofstream f(c.report, std::ios::binary);
  if (!f)
    throw std::runtime_error(fmt::format("cannot write {}", c.report));
  f << dump(report);
  return report["pass"].get<bool>() ? 0 : kFailed;
}

// Expands a JSON config into flags that the command line does not already set.
std::vector<std::string> with_config(std::vector<std::string> args) {
  auto it = std::find_if(args.begin(), args.end(), [](const std::string &a) {
    return a == "--config" || a.rfind("--config=", 0) == 0;
  });
  if (it == args.end())
    return args;
  std::string path;
  if (*it == "--config") {
    if (std::next(it) == args.end())
      throw UsageError("--config needs a file");
    path = *std::next(it);
    args.erase(it, std::next(it, 2));
  } else {
    path = it->substr(9);
    args.erase(it);
  }
  std::ifstream f(path);
  if (!f)
    throw UsageError(fmt::format("cannot read config {}", path));
  Json cfg;
  try {
    cfg = Json::parse(f);
  } catch (const Json::parse_error &e) {
    throw UsageError(fmt::format("config {}: {}", path, e.what()));
  }
  if (!cfg.is_object())
    throw UsageError("config must be a JSON object");
  auto given = [&](const std::string &flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string &a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  for (const auto &[key, v] : cfg.items()) {
    const std::string flag = "--" + key;
    if (given(flag))
      continue;
    if (v.is_boolean()) {
      if (v.get<bool>())
        args.push_back(flag);
    } else if (v.is_array()) {
      std::string joined;
      for (const auto &x : v)
        joined += (joined.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
      args.push_back(flag);
      args.push_back(joined);
    } else if (v.is_string() || v.is_number()) {
      args.push_back(flag);
      args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      throw UsageError(fmt::format("config key '{}' must be a scalar or an array", key));
    }
  }
  return args;
}

} // namespace

int main(int argc, char **argv) {
  RunConfig c;
  CLI::App app{"Exact crystalline cohomology of classifying stacks at desk scale"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--p", c.p, "prime");
  app.add_option("--d", c.d, "residue field degree");
  app.add_option("--witt-length,-N", c.N, "Witt truncation length N");
  app.add_option("--group", c.group, "invariant factors, e.g. 2,2");
  app.add_option("--max-degree", c.max_degree, "degree bound");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--json", c.json, "same as --format json");
  app.add_flag("--csv", c.csv, "same as --format csv");
  app.add_option("--max-order", c.max_order, "largest group order for bar complexes");
  app.add_option("--budget", c.budget, "largest number of cochains in one degree");
  app.add_option("--seed", c.seed, "seed for randomized suites");
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--config", "JSON file with flag values; flags on the command line win");

  auto *witt = app.add_subcommand("witt", "Witt vector arithmetic");
  witt->add_option("--op", c.op, "add, mul, neg, frobenius, verschiebung, teichmuller, integer, ghost");
  witt->add_option("--x", c.x, "Witt vector as coordinate arrays, or integers for ghost");
  witt->add_option("--y", c.y, "second operand");
  witt->add_option("--code", c.code, "field element code for teichmuller");
  witt->add_option("--value", c.value, "integer for --op integer");

  auto *dieu = app.add_subcommand("dieudonne", "Dieudonne ring words and catalog modules");
  dieu->add_option("--word", c.word, "word in F, V, p and scalars");
  dieu->add_option("--catalog", c.entry, "catalog entry, e.g. alpha_p or W(2,1)");

  auto *gh = app.add_subcommand("group-homology", "integral group homology from the bar complex");
  gh->add_option("--coeff-mod", c.coeff_mod, "homology with Z/q coefficients");
  gh->add_flag("--normalized", c.normalized, "use the normalized bar complex");
  gh->add_option("--iterations", c.iterations, "iterate the classifying construction (K(G, n))");
  gh->add_flag("--emit-complex", c.emit_complex, "include the chain complex in the output");

  auto *ss = app.add_subcommand("specseq", "spectral sequence pages for a coefficient model");
  ss->add_option("--model", c.model, "abelian or constant")->check(CLI::IsMember({"abelian", "constant"}));
  ss->add_option("--genus", c.genus, "dimension g of the abelian model");

  auto *st = app.add_subcommand("stack-cohomology", "cohomology of classifying stacks");
  st->add_option("--constant-group", c.constant_group, "constant group by invariant factors");
  st->add_option("--abelian", c.abelian, "abelian model of dimension g");
  st->add_option("--pdivisible", c.pdivisible, "etale p-divisible group of height h");
  st->add_option("--compare", c.compare, "compare H^2 with the catalog Dieudonne module");
  st->add_option("--product", c.product, "second factor for the Kunneth check");
  st->add_option("--frobenius", c.frobenius, "Frobenius on H^1 as rows, e.g. 0,1;2,0");
  st->add_option("--tower-top", c.tower_top, "top tower index (0: automatic)");
  st->add_option("--window", c.window, "levels that must agree for a limit");

  auto *ver = app.add_subcommand("verify", "acceptance suite");
  ver->add_option("--suite", c.suite, "all, witt, dieudonne, homology, specseq, stackcoh or ids 1,2,...");
  ver->add_option("--report", c.report, "report path");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = with_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    validate(c);
    if (ver->parsed())
      return run_verify(c);
    Emitted e;
    if (witt->parsed())
      e = run_witt(c);
    else if (dieu->parsed())
      e = run_dieudonne(c);
    else if (gh->parsed())
      e = run_group_homology(c);
    else if (ss->parsed())
      e = run_specseq(c);
    else
      e = run_stack(c);
    const bool csv = format_of(c) == "csv";
    if (csv && !e.csv_ok)
      throw UsageError("this output has no CSV projection; use JSON");
    const std::string text = csv ? groups_csv(e.rows) : dump(e.json);
    if (c.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f)
        throw std::runtime_error(fmt::format("cannot write {}", c.out));
      f << text;
    }
    return e.pass ? 0 : kFailed;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OutOfScope &e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded &e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception &e) {
    std::cerr << "error: bad JSON argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFailed;
  }
}
