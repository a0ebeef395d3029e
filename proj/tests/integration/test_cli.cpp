// Runs the installed command-line binary as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(POSETDIM_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(POSETDIM_FIXTURES) + "/" + name; }

json read(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

json strip(json j) {
  j.erase("timing");
  // Input paths differ between checkouts.
  if (j["params"].contains("input")) j["params"].erase("input");
  if (j["params"].contains("realiser")) j["params"].erase("realiser");
  return j;
}

class CliBinary : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("posetdim_it_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliBinary, DimExactMatchesGolden) {
  const auto r = cli("dim exact --input " + fixture("d6.json"));
  ASSERT_EQ(r.code, 0);
  const json golden = read(fixture("golden/dim_exact_d6.json"));
  EXPECT_EQ(strip(json::parse(r.out)), strip(golden));
}

TEST_F(CliBinary, AppendixAMatchesGolden) {
  const auto out = dir_ / "a.json";
  const auto r = cli("div verify-appendix-a --kappa 100 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(strip(read(out)), strip(read(fixture("golden/appendix_a_100.json"))));
}

TEST_F(CliBinary, MissingFileExitsTwo) {
  EXPECT_EQ(cli("poset check-realiser --input " + (dir_ / "none.json").string() +
                " --realiser " + (dir_ / "none2.json").string())
                .code,
            2);
}

TEST_F(CliBinary, MalformedJsonExitsTwo) {
  const auto bad = dir_ / "bad.json";
  std::ofstream(bad) << "{\"elements\": [1, 2";
  EXPECT_EQ(cli("dim exact --input " + bad.string()).code, 2);
}

TEST_F(CliBinary, UnknownFlagExitsTwo) {
  EXPECT_EQ(cli("div bound --kappa 5 --frobnicate").code, 2);
}

TEST_F(CliBinary, GlobalFlagsAfterSubcommand) {
  const auto a = cli("multiset l1 --n 8 --r 1 --seed 3");
  const auto b = cli("--seed 3 multiset l1 --n 8 --r 1");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip(json::parse(a.out)), strip(json::parse(b.out)));
  EXPECT_EQ(json::parse(a.out)["params"]["seed"], 3);
}

TEST_F(CliBinary, RealiserRoundTripThroughCheckRealiser) {
  const auto poset = dir_ / "p.json";
  const auto real = dir_ / "r.json";
  ASSERT_EQ(cli("div build --N 60 --kappa 3 --out " + poset.string()).code, 0);
  ASSERT_EQ(cli("div realiser --N 60 --kappa 3 --emit-realiser --out " + real.string()).code, 0);
  // Unwrap the poset and the extensions from their reports.
  std::ofstream(poset.string() + ".raw") << read(poset)["result"]["poset"].dump();
  std::ofstream(real.string() + ".raw") << read(real)["result"]["extensions"].dump();
  const auto check = cli("poset check-realiser --input " + poset.string() + ".raw --realiser " +
                         real.string() + ".raw");
  EXPECT_EQ(check.code, 0);
  EXPECT_TRUE(json::parse(check.out)["result"]["is_realiser"].get<bool>());
}

TEST_F(CliBinary, CsvExport) {
  const auto csv = dir_ / "rows.csv";
  ASSERT_EQ(cli("poly realiser --q 2 --d0 3 --delta 3 --csv " + csv.string()).code, 0);
  ASSERT_EQ(cli("div realiser --N 720 --kappa 6 --csv " + csv.string()).code, 0);
  std::ifstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(header, "family,instance,route,size,bound,certified");
  EXPECT_EQ(first.rfind("poly,", 0), 0U);
  EXPECT_EQ(second.rfind("interval,N=720 kappa=6,", 0), 0U);
  EXPECT_NE(second.find(",true"), std::string::npos);
}

TEST_F(CliBinary, PolyAndMultisetCommands) {
  const auto irr = cli("poly irreducibles --q 3 --delta 4");
  ASSERT_EQ(irr.code, 0);
  const auto j = json::parse(irr.out);
  EXPECT_EQ(j["command"], "poly irreducibles");
  EXPECT_EQ(cli("poly verify-appendix-b --q 3 --delta 3").code, 0);
  EXPECT_EQ(cli("poly bound --q 2 --delta 3").code, 0);
  EXPECT_EQ(cli("poly decompose --q 2 --d0 4 --delta 2").code, 0);
  EXPECT_EQ(cli("multiset realiser --weights degrees:1,1,2,3 --k 2 --l 4").code, 0);
  EXPECT_EQ(cli("multiset realiser --n 3 --weights log-primes --k 'log(2)' --l 'log(12)'").code, 0);
  EXPECT_EQ(cli("multiset good-function --n 8 --r 2").code, 0);
  EXPECT_EQ(cli("multiset realiser --n 3 --k 2 --l 1").code, 2);
  EXPECT_EQ(cli("div decompose --N 500 --kappa 5").code, 0);
  EXPECT_EQ(cli("poset hypercube --n 3 --layers 1,2").code, 0);
}

TEST_F(CliBinary, AcceptCorruptedFixtureFails) {
  const auto cfg = dir_ / "cfg.json";
  std::ofstream(cfg) << R"({"criteria": [1], "corrupt": ["d6-realiser"]})";
  const auto r = cli("accept --config " + cfg.string());
  EXPECT_EQ(r.code, 1);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["result"]["criteria"][0]["checks_pass"].get<bool>());
  EXPECT_TRUE(j["timing"].contains("criteria"));
}
