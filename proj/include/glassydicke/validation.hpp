#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glassydicke {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  bool quick = false;  // reduced sizes/seeds, finishes in under a minute
  int threads = 1;
};

// Runs the end-to-end acceptance checks, printing one pass/fail line per
// criterion to `progress` as each finishes.
std::vector<CriterionResult> run_acceptance(const ValidationOptions& opts,
                                            std::ostream& progress);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace glassydicke
