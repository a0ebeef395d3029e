#include "posetdim/report.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "posetdim/error.hpp"

#ifndef POSETDIM_VERSION
#define POSETDIM_VERSION "0.0.0"
#endif

namespace posetdim {

std::string tool_version() { return POSETDIM_VERSION; }

nlohmann::json make_report(const std::string& command, nlohmann::json params,
                           nlohmann::json result, nlohmann::json timing) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", tool_version()}};
  j["command"] = command;
  j["params"] = std::move(params);
  j["result"] = std::move(result);
  j["timing"] = std::move(timing);
  return j;
}

nlohmann::json without_timing(nlohmann::json report) {
  report.erase("timing");
  return report;
}

Stopwatch::Stopwatch()
    : start_(std::chrono::steady_clock::now()), wall_start_(std::chrono::system_clock::now()) {}

double Stopwatch::seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

nlohmann::json Stopwatch::timing() const {
  const std::time_t t = std::chrono::system_clock::to_time_t(wall_start_);
  std::tm utc{};
  gmtime_r(&t, &utc);
  std::ostringstream os;
  os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return {{"started_at", os.str()}, {"seconds", seconds()}};
}

std::string bound_csv_header() { return "family,instance,route,size,bound,certified"; }

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv_line(const BoundRow& row) {
  std::ostringstream os;
  os << quote(row.family) << ',' << quote(row.instance) << ',' << quote(row.route) << ','
     << row.size << ',' << std::setprecision(10) << row.bound << ',';
  if (row.certified) os << (*row.certified ? "true" : "false");
  return os.str();
}

void append_csv(const std::string& path, const std::vector<BoundRow>& rows) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError("cannot write '" + path + "'");
  if (fresh) out << bound_csv_header() << '\n';
  for (const auto& r : rows) out << to_csv_line(r) << '\n';
}

}  // namespace posetdim
