// Acceptance battery: re-derives the published values and prints one
// pass/fail line per criterion.  Exit status 0 iff every criterion passes.

#include <iostream>

#include "dgame/reproduce.hpp"

int main() {
  std::vector<int> ids = dgame::reproduce_table("all");
  std::vector<dgame::CriterionResult> results =
      dgame::run_battery(ids, std::cout);
  bool all = true;
  for (const auto& r : results) all &= r.pass;
  std::cout << (all ? "acceptance: all criteria passed"
                    : "acceptance: at least one criterion failed")
            << "\n";
  return all ? 0 : 1;
}
