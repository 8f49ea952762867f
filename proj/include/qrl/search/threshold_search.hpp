#pragma once

#include "qrl/search/grover.hpp"

namespace qrl {

// Amplifies sequences whose counted total reward is >= threshold: comparator
// phase flip on the count register conjugated by the counting oracle, then the
// randomized Grover schedule. The returned sequence is re-verified against the
// oracle's reward table.
SearchOutcome amplitude_amplify_threshold(const OracleHandle& counting_oracle, std::size_t threshold,
                                          Rng& rng, std::size_t budget = 0);

// Iterative threshold raising toward the maximum total reward; budget
// 50 sqrt(N) queries over the whole run.
SearchOutcome find_max_reward(const OracleHandle& counting_oracle, Rng& rng);

}  // namespace qrl
