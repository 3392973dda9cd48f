#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dgame {

inline constexpr const char* kToolName = "dgame";
inline constexpr const char* kToolVersion = "0.1.0";

// Machine-readable run record: key/value fields plus a nested item list,
// serialized as canonical JSON.  serialize(parse_report(text)) == text.
struct RunReport {
  int report_version = 1;
  std::string tool = std::string(kToolName) + " " + kToolVersion;
  std::string command;       // verb
  std::string command_line;  // full echo
  std::string graph;         // graph expression
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> results;
  std::vector<std::map<std::string, std::string>> items;
  std::uint64_t nodes = 0;
  double wall_ms = 0.0;

  bool operator==(const RunReport&) const = default;
};

std::string serialize(const RunReport& r);
RunReport parse_report(const std::string& text);

void write_report_file(const RunReport& r, const std::string& path);

}  // namespace dgame
