#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace btq {

struct VerifyCheck {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  std::string title;
  double budget_seconds = 0;
  double seconds = 0;
  std::vector<VerifyCheck> checks;
  bool pass() const;  // every check passes and the run stayed within budget
};

// Suite names, in acceptance order.
std::vector<std::string> suite_names();
// Runs one suite; "all" is not accepted here. Throws on unknown names.
SuiteResult run_suite(const std::string& name, uint64_t seed = 12345);

}  // namespace btq
