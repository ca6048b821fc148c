#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redstar/serialize.hpp"

namespace redstar {

struct RunConfig {
  int n = 2;
  /// 2n+2 entries of +-1; empty means definite.
  std::vector<int> signature;
  /// Truncation order N_nu.
  int order = 4;
  std::uint64_t seed = 42;
  /// Bound on the polynomial degree of sampled inputs.
  int degree = 4;
  std::string suite = "all";
  std::string json_path;
  /// Worker threads for suite cases; 0 picks the hardware concurrency.
  int jobs = 0;
};

/// "definite", "opposite" (q block +1, p block -1) or a comma-separated
/// list of +1/-1 entries.
std::vector<int> parse_signature(const std::string& text, int n);
/// Throws InputError on an invalid configuration.
void validate_config(const RunConfig& cfg);
FlatModel model_for(const RunConfig& cfg);

/// Seed for one case, derived from the run seed and the case id only.
std::uint64_t case_seed(std::uint64_t seed, const std::string& id);

struct CaseReport {
  std::string id;
  CheckResult result;
  Json inputs;
};

struct SuiteReport {
  std::string suite;
  std::vector<std::string> warnings;
  /// Sorted by case id.
  std::vector<CaseReport> cases;

  bool pass() const;
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const RunConfig& cfg);
/// {suite, pass, warnings, cases: [{check, pass, witness}],
///  failures: [{check, inputs, diff}]}.
Json to_json(const SuiteReport& r);

}  // namespace redstar
