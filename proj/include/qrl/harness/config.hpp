#pragma once

#include <cstdint>
#include <string>

namespace qrl {

// Parameters of one experiment run. The TOML file and CLI flags populate the
// same fields; CLI values win.
struct ExperimentConfig {
  std::string kind = "search";  // search | learn-compare | stochastic-search |
                                // lemma-verify | structural-pair
  std::size_t n = 2;
  std::size_t M = 2;
  double epsilon = 1.0;
  std::size_t k = 0;       // 0 -> M
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t T_eval = 0;  // 0 -> k sqrt(n^M) M
  std::size_t bits = 4;    // estimator precision
  double p_min = 0.5;
  double p_hi = 0.9;       // stochastic fixture: reward probability of the
  double p_lo = 0.1;       // promoted sequences vs the rest
  std::size_t num_hi = 4;
  std::string fixture_path;  // optional fixture JSON input
  std::string out_dir = ".";

  void validate() const;  // throws std::invalid_argument
  std::string to_json() const;
};

// Minimal TOML subset: `key = value` lines, # comments, quoted strings,
// integers, floats, booleans. Unknown keys are rejected.
void apply_toml_config(ExperimentConfig& cfg, const std::string& text);
void apply_toml_file(ExperimentConfig& cfg, const std::string& path);

}  // namespace qrl
