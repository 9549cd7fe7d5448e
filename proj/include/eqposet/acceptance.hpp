#pragma once

// The property suites behind the acceptance criteria.  A suite is a pure
// function of its seed; its report holds counts and verdicts only, so two
// runs with the same seed produce the same bytes.  Timing is the caller's
// business.

#include <string>
#include <vector>

#include "eqposet/scalar.hpp"

namespace eqp::acceptance {

struct SuiteResult {
  int id = 0;
  std::string title;
  size_t instances = 0;
  size_t checks = 0;
  size_t failures = 0;
  std::vector<std::string> notes;  // the first few failures

  bool pass() const { return failures == 0 && checks > 0; }
  // "key: value" lines, ending with "result: pass|fail".
  std::string report() const;
};

constexpr int kSuites = 9;
std::string title(int id);
// Wall-clock budget of suite id in seconds.
double time_limit(int id);
// Throws std::out_of_range for ids outside 1..kSuites.
SuiteResult run_suite(int id, u64 seed);

// The selftest report: a seed line, then one report per suite.
std::string selftest_report(const std::vector<SuiteResult>& results, u64 seed);

}  // namespace eqp::acceptance
