#ifndef BAIREGAMES_VERIFY_HPP
#define BAIREGAMES_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bairegames::verify {

struct SuiteOptions {
  // "small" keeps every suite comfortably under a second; "full" runs the
  // acceptance-scale budgets.
  std::string budget = "small";
  // Sample count for the ultrametric law checks.
  std::uint64_t triples = 10000;
  std::uint64_t seed = 1;
  std::uint64_t fuel = 4096;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  // Failure explanation or a small success statistic.
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Runs one named suite: "topology", "games", "tree", "krom", or "transfer".
// Unknown names throw ConfigError. Checks never throw; failures are captured
// in the report.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

// Expands "all" into every suite, in the fixed order above.
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteOptions& opts);

}  // namespace bairegames::verify

#endif
