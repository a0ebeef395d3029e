#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace posetdim {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "posetdim";

std::string tool_version();

/// {"schema_version", "tool", "command", "params", "result", "timing"}.
/// Everything outside "timing" is a pure function of the inputs.
nlohmann::json make_report(const std::string& command, nlohmann::json params,
                           nlohmann::json result, nlohmann::json timing);

/// The report without its "timing" member, for golden comparisons.
nlohmann::json without_timing(nlohmann::json report);

/// Wall-clock stopwatch that also records the start time.
class Stopwatch {
 public:
  Stopwatch();
  double seconds() const;
  nlohmann::json timing() const;  // {"started_at", "seconds"}

 private:
  std::chrono::steady_clock::time_point start_;
  std::chrono::system_clock::time_point wall_start_;
};

/// One row of bound-versus-size data.
struct BoundRow {
  std::string family;    // "multiset", "interval", "poly"
  std::string instance;  // parameters as text
  std::string route;
  std::size_t size = 0;
  double bound = 0;
  std::optional<bool> certified;
};

std::string bound_csv_header();
std::string to_csv_line(const BoundRow& row);
/// Appends rows, writing the header first if the file is new or empty.
void append_csv(const std::string& path, const std::vector<BoundRow>& rows);

}  // namespace posetdim
