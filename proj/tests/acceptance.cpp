// Runs the acceptance criteria and prints one line per criterion. Criterion 13
// runs the full suite twice through the CLI and compares the reports byte for byte.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "crys/verify/acceptance.hpp"

namespace {

std::string slurp(const std::filesystem::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool determinism_line() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "acceptance_determinism";
  fs::create_directories(dir);
  std::string first, second;
  int codes[2] = {-1, -1};
  for (int run = 0; run < 2; ++run) {
    const fs::path report = dir / fmt::format("report{}.json", run);
    fs::remove(report);
    const std::string cmd =
        fmt::format("\"{}\" verify --suite all --report \"{}\" > /dev/null", CRYSTACK_PATH, report.string());
    codes[run] = std::system(cmd.c_str());
    (run == 0 ? first : second) = slurp(report);
  }
  const bool pass = !first.empty() && first == second && codes[0] == 0 && codes[1] == 0;
  std::string why;
  if (first.empty())
    why = " -- no report written";
  else if (first != second)
    why = " -- reports differ";
  else if (codes[0] || codes[1])
    why = fmt::format(" -- verify exit statuses {} and {}", codes[0], codes[1]);
  std::cout << fmt::format("[{}] 13 determinism: verify --suite all twice gives identical report.json ({} bytes){}",
                           pass ? "PASS" : "FAIL", first.size(), why)
            << std::endl;
  return pass;
}

} // namespace

int main() {
  bool all = true;
  for (int id : crys::criterion_ids()) {
    const auto r = crys::run_criterion(id);
    std::cout << r.line() << std::endl;
    all = all && r.pass;
  }
  all = determinism_line() && all;
  std::cout << (all ? "all criteria pass" : "some criteria FAILED") << std::endl;
  return all ? 0 : 1;
}
