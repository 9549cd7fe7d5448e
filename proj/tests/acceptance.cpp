// Acceptance criteria 1-10: one pass/fail line per criterion.
//
// Criteria 1-9 run the property suites in process and compare their
// wall-clock time with the budget.  Criterion 10 runs `eqposet selftest`
// with the same seed and requires its report to match the in-process report
// byte for byte.
//
// usage: acceptance <path-to-eqposet> [seed]

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "eqposet/acceptance.hpp"

using namespace eqp;

namespace {

struct Run {
  std::string output;
  int status = -1;
};

Run capture(const std::string& cmd) {
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.output.append(buf.data(), n);
  r.status = pclose(f);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-eqposet> [seed]\n";
    return 2;
  }
  std::string cli = argv[1];
  u64 seed = argc > 2 ? std::stoull(argv[2]) : 1;

  bool all = true;
  std::vector<acceptance::SuiteResult> results;
  for (int id = 1; id <= acceptance::kSuites; ++id) {
    auto t0 = std::chrono::steady_clock::now();
    results.push_back(acceptance::run_suite(id, seed));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& r = results.back();
    bool in_time = secs < acceptance::time_limit(id);
    bool ok = r.pass() && in_time;
    all = all && ok;
    char line[256];
    std::snprintf(line, sizeof line, "criterion %d: %s  %s  (%zu instances, %zu checks, %zu failures, %.2f s of %.0f s)", id,
                  ok ? "PASS" : "FAIL", r.title.c_str(), r.instances, r.checks, r.failures, secs, acceptance::time_limit(id));
    std::cout << line << std::endl;
    for (const auto& n : r.notes) std::cout << "    " << n << "\n";
  }

  std::string expected = acceptance::selftest_report(results, seed);
  Run cli_run = capture("\"" + cli + "\" selftest --seed " + std::to_string(seed));
  bool same = cli_run.status == 0 && cli_run.output == expected;
  all = all && same;
  std::cout << "criterion 10: " << (same ? "PASS" : "FAIL") << "  selftest report is byte-identical across runs ("
            << cli_run.output.size() << " bytes, exit status " << cli_run.status << ")" << std::endl;
  if (!same && cli_run.output != expected) std::cout << "    reports differ\n";
  return all ? 0 : 1;
}
