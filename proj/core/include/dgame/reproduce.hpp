#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dgame/report.hpp"

namespace dgame {

// One entry of the reproduction battery: the published values this tool is
// expected to recompute, each with an explicit wall-clock allowance.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

inline constexpr int kCriterionCount = 10;
inline constexpr std::uint64_t kPropertySeed = 20260810;

// Runs one battery entry (1..10).  `log` receives progress lines; may be null.
CriterionResult run_criterion(int id, std::ostream* log);

// Table names accepted by the `reproduce` command.
std::vector<std::string> reproduce_tables();

// Criterion ids behind a table name; throws ParamError for unknown names.
std::vector<int> reproduce_table(const std::string& table_id);

// Runs a set of criteria, printing one pass/fail line each.
std::vector<CriterionResult> run_battery(const std::vector<int>& ids,
                                         std::ostream& out);

RunReport battery_report(const std::vector<CriterionResult>& results,
                         const std::string& table_id);

}  // namespace dgame
