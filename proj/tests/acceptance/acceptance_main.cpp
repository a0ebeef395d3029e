// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance [--seed S] [--jobs J] [--report path] [ids...]

#include <cstdlib>
#include <iostream>
#include <string>

#include "posetdim/acceptance.hpp"
#include "posetdim/poset_json.hpp"
#include "posetdim/report.hpp"

int main(int argc, char** argv) {
  using namespace posetdim;
  AcceptanceConfig cfg;
  std::string report_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      cfg.seed = std::stoull(argv[++i]);
    } else if (a == "--jobs" && i + 1 < argc) {
      cfg.jobs = std::stoi(argv[++i]);
    } else if (a == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else {
      cfg.criteria.push_back(std::stoi(a));
    }
  }
  if (cfg.criteria.empty()) cfg.criteria = AcceptanceConfig::full().criteria;

  const Stopwatch watch;
  const auto summary = run_acceptance_suite(cfg);
  for (const auto& r : summary.results) {
    std::cout << summary_line(r) << std::endl;
    if (!r.pass()) std::cout << "  details: " << r.details.dump() << std::endl;
  }
  if (!report_path.empty()) {
    auto timing = watch.timing();
    timing.update(summary.timing_json());
    write_json_file(report_path,
                    make_report("accept", {{"criteria", cfg.criteria}, {"seed", cfg.seed}},
                                summary.result_json(), timing));
  }
  std::cout << (summary.all_pass() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return summary.all_pass() ? EXIT_SUCCESS : EXIT_FAILURE;
}
