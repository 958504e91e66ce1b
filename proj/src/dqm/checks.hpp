#pragma once

#include <string>
#include <vector>

namespace dqm::checks {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The verification suite: every numbered check rebuilds its scenario from
// scratch, runs it at the stated tolerance (exact arithmetic where the claim
// is exact), and reports one pass/fail result. `filter` keeps only checks
// whose id or name contains the substring; `scratch_dir` is where the
// determinism check writes its files (a temp directory by default).
std::vector<CheckResult> run_acceptance(const std::string& filter = "",
                                        const std::string& scratch_dir = "");

std::string format_result_line(const CheckResult& result);

}  // namespace dqm::checks
