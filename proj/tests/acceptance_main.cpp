#include <cstdlib>
#include <iostream>

#include "bifib/suite.hpp"

int main(int argc, char** argv) {
  uint64_t rng_seed = 2024;
  if (argc > 1) rng_seed = std::strtoull(argv[1], nullptr, 10);
  if (const char* env = std::getenv("BIFIB_RNG_SEED")) rng_seed = std::strtoull(env, nullptr, 10);
  auto results = bifib::run_paper_suite(rng_seed, std::cout);
  size_t failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cout << (failed ? "ACCEPTANCE: FAIL (" + std::to_string(failed) + " criteria)"
                       : "ACCEPTANCE: PASS")
            << std::endl;
  return failed ? 1 : 0;
}
