#pragma once

#include "qrl/search/grover.hpp"

namespace qrl {

struct PairOutcome {
  std::size_t a_index = 0;  // action sequence
  std::size_t s_index = 0;  // percept sequence
  std::size_t oracle_queries = 0;
  std::size_t interaction_steps = 0;
  bool success = false;  // reward register measured 1
};

// Amplifies the rewarded component of the purified environment state and
// measures a jointly rewarded (action, percept) sequence pair. Expected
// queries scale as 1/gamma; gamma = 0 raises an error.
PairOutcome sample_rewarding_pair(const OracleHandle& purified, Rng& rng,
                                  std::size_t budget = 0);

}  // namespace qrl
