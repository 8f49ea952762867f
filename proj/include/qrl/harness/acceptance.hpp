#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qrl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

// Runs the full release gate: ten numbered checks covering the amplitude law,
// the exploration speedup, the short-horizon comparison, the tested-interaction
// lemmas, the stochastic and counting pipelines, structural-dependence
// sampling, and bit-reproducibility of batch runs.
std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed, const std::string& out_dir);

// Prints one PASS/FAIL line per criterion to `console`, writes
// acceptance_report.json under out_dir, and returns 0 when every criterion
// passes, 2 otherwise.
int run_acceptance(std::uint64_t seed, const std::string& out_dir, std::ostream& console);

}  // namespace qrl
