#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "posetdim/caps.hpp"

namespace posetdim {

/// Deliberate corruptions used as negative controls. Each one makes exactly
/// one criterion fail with a witness in its details.
inline const std::vector<std::string> kCorruptions = {
    "d6-poset",      // criterion 1: D_6 with an extra cover 6 -> 1
    "d6-realiser",   // criterion 1: the D_6 realiser loses its second order
    "l1-coverage",   // criterion 3: only the first sigma survives re-verification
    "interval-iso",  // criterion 6: two images swapped in one component
    "poly-iso",      // criterion 9: two images swapped in one component
};

struct AcceptanceConfig {
  std::vector<int> criteria;  // ids 1..10; empty runs nothing
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<std::string> corrupt;
  Caps caps;

  /// Every criterion at seed 0.
  static AcceptanceConfig full();
  /// {"criteria": [...], "seed": 0, "jobs": 1, "corrupt": [...]}. Missing
  /// keys take the values of an empty config. Throws InputError.
  static AcceptanceConfig from_json(const nlohmann::json& j, Caps caps = {});
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0 when no limit is stated
  nlohmann::json details;    // depends only on the config, never on timing
  std::string error;         // set when the criterion threw

  bool within_time() const { return limit_seconds <= 0 || seconds <= limit_seconds; }
  bool pass() const { return checks_pass && within_time(); }
};

struct AcceptanceSummary {
  std::vector<CriterionResult> results;
  bool all_pass() const;
  /// Pass/fail and details per criterion; seconds live under "timing".
  nlohmann::json result_json() const;
  nlohmann::json timing_json() const;
};

std::string criterion_name(int id);
double criterion_time_limit(int id);

/// Runs the listed criteria, `jobs` at a time. Results come back in the
/// order of config.criteria.
AcceptanceSummary run_acceptance_suite(const AcceptanceConfig& config);

/// One criterion on its own.
CriterionResult run_criterion(int id, const AcceptanceConfig& config);

/// "criterion 3 [L1 families]: PASS (1.23 s, limit 120 s)".
std::string summary_line(const CriterionResult& r);

}  // namespace posetdim
