#include "crys/dieudonne/catalog.hpp"

#include <regex>
#include <stdexcept>

#include <fmt/format.h>

namespace crys {

namespace {

// n with p^n == q, or -1
int log_p(long q, int p) {
  if (q < 1)
    return -1;
  int n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  return q == 1 ? n : -1;
}

int parse_order(const std::string &base, const std::string &exp, int p, const std::string &name) {
  long b = base == "p" ? p : std::stol(base);
  int n;
  if (!exp.empty()) {
    if (b != p)
      throw std::invalid_argument(fmt::format("'{}' is not a power of p = {}", name, p));
    n = std::stoi(exp);
  } else {
    n = log_p(b, p);
  }
  if (n < 1)
    throw std::invalid_argument(fmt::format("'{}' is not a nontrivial power of p = {}", name, p));
  return n;
}

} // namespace

std::string CatalogEntry::name() const {
  switch (kind) {
  case Constant:
    return fmt::format("constant(p^{})", n);
  case Mu:
    return fmt::format("mu(p^{})", n);
  case AlphaP:
    return "alpha_p";
  case WittKernel:
    return fmt::format("W({},{})", n, m);
  case QpZp:
    return "Qp/Zp";
  case MuInfinity:
    return "mu(p^inf)";
  case EtaleHeight:
    return fmt::format("etale({})", height);
  }
  return "?";
}

CatalogEntry CatalogEntry::parse(const std::string &raw, int p) {
  std::string name = raw;
  static const std::pair<const char *, const char *> superscripts[] = {
      {"¹", "^1"}, {"²", "^2"}, {"³", "^3"}, {"⁴", "^4"}, {"⁵", "^5"}, {"⁶", "^6"}, {"⁷", "^7"}, {"⁸", "^8"}, {"⁹", "^9"}};
  for (auto [from, to] : superscripts)
    for (auto at = name.find(from); at != std::string::npos; at = name.find(from))
      name.replace(at, std::string(from).size(), to);
  static const std::regex constant_re(R"((?:constant\(|Z/)(p|\d+)(?:\^(\d+))?\)?)");
  static const std::regex mu_re(R"(mu\((p|\d+)(?:\^(\d+))?\))");
  static const std::regex mu_inf_re(R"(mu\((?:p\^)?(?:inf|∞)\))");
  static const std::regex witt_re(R"(W\((\d+),\s*(\d+)\))");
  static const std::regex etale_re(R"((?:etale\((\d+)\)|height_(\d+)_etale|\(Qp/Zp\)\^(\d+)))");
  std::smatch mt;
  CatalogEntry e{};
  if (std::regex_match(name, mt, mu_inf_re)) {
    e.kind = MuInfinity;
  } else if (name == "alpha_p") {
    e.kind = AlphaP;
  } else if (name == "Qp/Zp") {
    e.kind = QpZp;
  } else if (std::regex_match(name, mt, constant_re)) {
    e.kind = Constant;
    e.n = parse_order(mt[1], mt[2], p, name);
  } else if (std::regex_match(name, mt, mu_re)) {
    e.kind = Mu;
    e.n = parse_order(mt[1], mt[2], p, name);
  } else if (std::regex_match(name, mt, witt_re)) {
    e.kind = WittKernel;
    e.n = std::stoi(mt[1]);
    e.m = std::stoi(mt[2]);
    if (e.n < 1 || e.m < 1)
      throw std::invalid_argument("W(n,m) needs n, m >= 1");
  } else if (std::regex_match(name, mt, etale_re)) {
    e.kind = EtaleHeight;
    for (int g = 1; g <= 3; ++g)
      if (mt[g].matched)
        e.height = std::stoi(mt[g]);
    if (e.height < 1)
      throw std::invalid_argument("height must be >= 1");
  } else {
    throw std::invalid_argument(fmt::format("unknown catalog entry '{}'", name));
  }
  return e;
}

CatalogModule catalog(const CatalogEntry &entry, const WittRingPtr &ring) {
  const int N = ring->length();
  const auto p = ring->from_integer(ring->p());
  auto one_by_one = [&](const WittVector &x) {
    WittMatrix m(ring, 1, 1);
    m.at(0, 0) = x;
    return m;
  };
  switch (entry.kind) {
  case CatalogEntry::Constant:
    return DieudonneModule(ring, {std::min(entry.n, N)}, one_by_one(ring->one()), one_by_one(p));
  case CatalogEntry::Mu:
    return DieudonneModule(ring, {std::min(entry.n, N)}, one_by_one(p), one_by_one(ring->one()));
  case CatalogEntry::AlphaP:
    return DieudonneModule(ring, {1}, one_by_one(ring->zero()), one_by_one(ring->zero()));
  case CatalogEntry::WittKernel:
    return quotient_module(entry.m, entry.n, ring);
  case CatalogEntry::QpZp:
    return PDivisibleModule{WittMatrix::identity(ring, 1)};
  case CatalogEntry::MuInfinity:
    return PDivisibleModule{one_by_one(p)};
  case CatalogEntry::EtaleHeight:
    return PDivisibleModule{WittMatrix::identity(ring, entry.height)};
  }
  throw std::logic_error("unhandled catalog entry");
}

CatalogModule catalog(const std::string &name, const WittRingPtr &ring) {
  return catalog(CatalogEntry::parse(name, ring->p()), ring);
}

} // namespace crys
