#pragma once

#include <string>
#include <vector>

namespace mouldlab {

// One named verification outcome. A check whose hypotheses do not hold is
// reported as not applicable instead of being run.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
  bool applicable = true;

  explicit operator bool() const noexcept { return passed; }
  const char* status() const noexcept { return !applicable ? "n/a" : passed ? "pass" : "FAIL"; }
};

inline CheckResult not_applicable(std::string name, std::string why) {
  return CheckResult{std::move(name), true, std::move(why), false};
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (r.applicable && !r.passed) return false;
  }
  return true;
}

}  // namespace mouldlab
