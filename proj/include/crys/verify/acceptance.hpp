#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crys/io/json_io.hpp"

namespace crys {

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  /// The statement being reproduced, in words.
  std::string reference;
  bool pass = false;
  std::vector<CheckOutcome> checks;

  /// "[PASS] 7 contraction identity ..." with the first failing check appended.
  std::string line() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
};

/// Ids of the criteria computed in-process (1..12); 13 compares two full runs
/// and is driven by the caller.
std::vector<int> criterion_ids();
/// "all", a group name (witt, dieudonne, homology, specseq, stackcoh) or a
/// comma-separated list of ids. Throws invalid_argument for unknown names.
std::vector<int> parse_suite(const std::string &suite);

CriterionResult run_criterion(int id, const VerifyOptions &opts = {});
std::vector<CriterionResult> run_suite(const std::vector<int> &ids, const VerifyOptions &opts = {});

/// Abelian p-groups of order <= max_order (all primes), as invariant factors.
std::vector<FinAbGroup> abelian_p_groups(long max_order);

Json report_json(const std::vector<CriterionResult> &results, const VerifyOptions &opts);

} // namespace crys
