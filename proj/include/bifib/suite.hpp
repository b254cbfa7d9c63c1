#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bifib {

struct CriterionResult {
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

// Runs the eight acceptance criteria and prints one pass/fail line per
// criterion to `out`. Returns the collected results.
std::vector<CriterionResult> run_paper_suite(uint64_t rng_seed, std::ostream& out);

}  // namespace bifib
