#pragma once

#include <string>
#include <vector>

namespace kgx {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;  // measured value, tolerance, runtime
};

struct SelfCheckOptions {
  bool fast = false;            // skip the exact-arithmetic checks
  double b2_perturbation = 0;   // fault-injection hook: scales the moments-route b_2
};

// Runs the full verification battery (closed-form agreement, exact moment
// recovery, route consistency, bound chains, covariance identities) and
// reports one result per criterion. Never throws: a criterion that errors
// out is reported as a failure with the message in `detail`.
std::vector<CheckResult> run_acceptance(const SelfCheckOptions& opts = {});

std::string format_report(const std::vector<CheckResult>& results);

}  // namespace kgx
