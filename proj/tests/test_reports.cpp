#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "posetdim/acceptance.hpp"
#include "posetdim/cli.hpp"
#include "posetdim/error.hpp"
#include "posetdim/report.hpp"

using namespace posetdim;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(POSETDIM_FIXTURES) + "/" + name; }

const json* find_check(const CriterionResult& r, const std::string& name) {
  for (const auto& c : r.details["checks"])
    if (c["check"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Report, EnvelopeCarriesVersionAndSeparateTiming) {
  const auto j = make_report("dim exact", {{"input", "x"}}, {{"dimension", 2}}, {{"seconds", 1.5}});
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["tool"]["name"], "posetdim");
  EXPECT_EQ(j["tool"]["version"], tool_version());
  EXPECT_FALSE(tool_version().empty());
  EXPECT_EQ(j["params"]["input"], "x");
  const auto stripped = without_timing(j);
  EXPECT_FALSE(stripped.contains("timing"));
  EXPECT_EQ(stripped["result"]["dimension"], 2);
}

TEST(Report, StopwatchTiming) {
  const Stopwatch w;
  const auto t = w.timing();
  EXPECT_GE(t["seconds"].get<double>(), 0.0);
  EXPECT_EQ(t["started_at"].get<std::string>().size(), 20U);
}

TEST(Report, CsvRowsAndQuoting) {
  EXPECT_EQ(bound_csv_header(), "family,instance,route,size,bound,certified");
  EXPECT_EQ(to_csv_line({"interval", "N=720 kappa=6", "rotations", 4, 25, true}),
            "interval,N=720 kappa=6,rotations,4,25,true");
  EXPECT_EQ(to_csv_line({"multiset", "a,b", "weighted", 3, 1.5, std::nullopt}),
            "multiset,\"a,b\",weighted,3,1.5,");
  const auto path = std::filesystem::temp_directory_path() / "posetdim_rows.csv";
  std::filesystem::remove(path);
  append_csv(path.string(), {{"poly", "x", "theorem", 6, 10, false}});
  append_csv(path.string(), {{"poly", "y", "theorem", 7, 10, true}});
  std::ifstream in(path);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3U);
  EXPECT_EQ(lines[0], bound_csv_header());
  EXPECT_EQ(lines[2], "poly,y,theorem,7,10,true");
  std::filesystem::remove(path);
}

TEST(Acceptance, EmptyConfigGivesEmptySummary) {
  const auto cfg = AcceptanceConfig::from_json(json::object());
  EXPECT_TRUE(cfg.criteria.empty());
  const auto s = run_acceptance_suite(cfg);
  EXPECT_TRUE(s.results.empty());
  EXPECT_TRUE(s.all_pass());
  EXPECT_TRUE(s.result_json()["criteria"].empty());
}

TEST(Acceptance, ConfigValidation) {
  EXPECT_THROW(AcceptanceConfig::from_json({{"criteria", {11}}}), InputError);
  EXPECT_THROW(AcceptanceConfig::from_json({{"corrupt", {"nope"}}}), InputError);
  EXPECT_THROW(AcceptanceConfig::from_json({{"jobs", 0}}), InputError);
  EXPECT_THROW(AcceptanceConfig::from_json(json::array()), InputError);
  const auto all = AcceptanceConfig::from_json({{"criteria", "all"}, {"seed", 5}});
  EXPECT_EQ(all.criteria.size(), 10U);
  EXPECT_EQ(all.seed, 5U);
}

TEST(Acceptance, FastCriteriaPass) {
  AcceptanceConfig cfg;
  cfg.criteria = {1, 2, 3, 4, 8};
  const auto s = run_acceptance_suite(cfg);
  ASSERT_EQ(s.results.size(), 5U);
  for (const auto& r : s.results) {
    EXPECT_TRUE(r.pass()) << summary_line(r) << "\n" << r.details.dump(1);
  }
  EXPECT_EQ(s.timing_json()["criteria"].size(), 5U);
  EXPECT_EQ(s.result_json().dump().find("\"seconds\""), std::string::npos);
}

TEST(Acceptance, ParallelJobsGiveSameResults) {
  AcceptanceConfig cfg;
  cfg.criteria = {2, 4, 8};
  const auto serial = run_acceptance_suite(cfg);
  cfg.jobs = 3;
  const auto parallel = run_acceptance_suite(cfg);
  EXPECT_EQ(serial.result_json().dump(), parallel.result_json().dump());
}

TEST(Acceptance, CorruptedD6RealiserFailsWithWitness) {
  AcceptanceConfig cfg;
  cfg.corrupt = {"d6-realiser"};
  const auto r = run_criterion(1, cfg);
  EXPECT_FALSE(r.pass());
  const json* c = find_check(r, "D6 two-chain embedding is a realiser");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE((*c)["ok"].get<bool>());
  EXPECT_EQ((*c)["witness"].size(), 2U);
}

TEST(Acceptance, CorruptedD6PosetFailsWithWitness) {
  AcceptanceConfig cfg;
  cfg.corrupt = {"d6-poset"};
  const auto r = run_criterion(1, cfg);
  EXPECT_FALSE(r.pass());
  const json* c = find_check(r, "D6 fixture is a poset");
  ASSERT_NE(c, nullptr);
  EXPECT_NE((*c)["witness"].get<std::string>().find("cycle"), std::string::npos);
}

TEST(Acceptance, CorruptedL1FamilyFailsWithWitness) {
  AcceptanceConfig cfg;
  cfg.corrupt = {"l1-coverage"};
  const auto r = run_criterion(3, cfg);
  EXPECT_FALSE(r.pass());
  bool witnessed = false;
  for (const auto& c : r.details["checks"]) witnessed = witnessed || c.contains("witness");
  EXPECT_TRUE(witnessed);
}

TEST(Acceptance, CorruptedPolyImagesFailWithWitness) {
  AcceptanceConfig cfg;
  cfg.corrupt = {"poly-iso"};
  const auto r = run_criterion(9, cfg);
  EXPECT_FALSE(r.pass());
  const json* c = find_check(r, "(2,3,3) decomposition");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE((*c)["ok"].get<bool>());
  EXPECT_NE(c->dump().find("witness"), std::string::npos);
}

TEST(Acceptance, SummaryLineFormat) {
  CriterionResult r;
  r.id = 3;
  r.name = "L1 families";
  r.checks_pass = true;
  r.seconds = 1.234;
  r.limit_seconds = 120;
  EXPECT_EQ(summary_line(r), "criterion 3 [L1 families]: PASS (1.23 s, limit 120 s)");
  r.seconds = 121;
  EXPECT_FALSE(r.pass());
  EXPECT_NE(summary_line(r).find("time limit exceeded"), std::string::npos);
}

TEST(Cli, DimExactOnD6) {
  const auto r = run({"dim", "exact", "--input", fixture("d6.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["dimension"], 2);
  EXPECT_EQ(j["command"], "dim exact");
  EXPECT_EQ(j["params"]["seed"], 0);
  EXPECT_TRUE(j["params"].contains("caps"));
  EXPECT_EQ(j["tool"]["version"], tool_version());
}

TEST(Cli, AppendixATrace) {
  const auto r = run({"div", "verify-appendix-a", "--kappa", "100"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["params"]["kappa"], "100");
  EXPECT_FALSE(j["result"].empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"poset", "check-realiser", "--input", "/nonexistent.json", "--realiser",
                 "/nonexistent2.json"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"dim", "exact", "--input", fixture("d6.json"), "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"dim", "exact", "--input", fixture("d6_corrupted.json")}).code, kExitUsage);
  EXPECT_EQ(run({"div", "verify-appendix-a", "--kappa", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, CheckRealiserVerdicts) {
  const auto ok = run({"poset", "check-realiser", "--input", fixture("d6.json"), "--realiser",
                       fixture("d6_realiser.json")});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_TRUE(json::parse(ok.out)["result"]["is_realiser"].get<bool>());

  const auto path = std::filesystem::temp_directory_path() / "posetdim_one_order.json";
  {
    std::ofstream f(path);
    f << R"({"realiser": [[1, 5, 3, 2, 6, 4]]})";
  }
  const auto bad = run({"poset", "check-realiser", "--input", fixture("d6.json"), "--realiser",
                        path.string()});
  EXPECT_EQ(bad.code, kExitFalse);
  const auto j = json::parse(bad.out);
  EXPECT_FALSE(j["result"]["is_realiser"].get<bool>());
  EXPECT_EQ(j["result"]["witness"].size(), 2U);
  std::filesystem::remove(path);
}

TEST(Cli, SameSeedSameReport) {
  const std::vector<std::string> args = {"--seed", "7", "multiset", "realiser", "--n", "8",
                                         "--k", "1", "--l", "2"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(without_timing(json::parse(a.out)).dump(), without_timing(json::parse(b.out)).dump());
  const auto j = json::parse(a.out);
  EXPECT_EQ(j["params"]["seed"], 7);
  EXPECT_TRUE(j["result"]["certified"].get<bool>());
}

TEST(Cli, AcceptWithEmptyConfig) {
  const auto path = std::filesystem::temp_directory_path() / "posetdim_empty_config.json";
  {
    std::ofstream f(path);
    f << "{}";
  }
  const auto r = run({"accept", "--config", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["result"]["criteria"].empty());
  std::filesystem::remove(path);
}

TEST(Cli, AcceptCorruptionExitsFalse) {
  const auto r = run({"accept", "--criteria", "1", "--corrupt", "d6-realiser"});
  EXPECT_EQ(r.code, kExitFalse);
  EXPECT_NE(r.err.find("criterion 1"), std::string::npos);
  EXPECT_NE(r.err.find("FAIL"), std::string::npos);
}

TEST(Cli, CapsFileIsApplied) {
  const auto path = std::filesystem::temp_directory_path() / "posetdim_caps.json";
  {
    std::ofstream f(path);
    f << R"({"interval_integers": 10})";
  }
  const auto r = run({"--caps", path.string(), "div", "build", "--N", "100", "--kappa", "2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  std::filesystem::remove(path);
}
