#pragma once

#include "qrl/search/grover.hpp"

namespace qrl {

struct EstimateOutcome {
  std::size_t sequence_index = 0;
  double theta_estimate = 0.0;  // multiple of pi/2^l in [0, pi/2]
  std::size_t bits = 0;
  double p_estimate = 0.0;  // sin^2(theta_estimate)
  std::size_t oracle_queries = 0;
  std::size_t interaction_steps = 0;
};

// Default estimator precision for a promised minimal reward probability:
// ceil(log2(pi / arcsin sqrt(p_min))) + 2.
std::size_t default_estimator_bits(double p_min);

// l-bit phase estimation of the reward rotation's Grover iterate (eigenphases
// +-2 theta_a); the sign is folded out. Costs 2^l - 1 oracle applications.
EstimateOutcome phase_estimate_reward(const OracleHandle& stochastic_oracle, std::size_t a,
                                      std::size_t l, Rng& rng);

// Amplifies sequences whose estimated reward probability clears p_min:
// coherent phase estimation, comparator flip on the folded grid index, and
// uncomputation per marking; randomized amplification schedule on top.
// oracle_queries counts elementary oracle applications, so interaction_steps
// = markings * (2^l - 1) * M.
SearchOutcome amplify_above_pmin(const OracleHandle& stochastic_oracle, double p_min,
                                 std::size_t l, Rng& rng, std::size_t budget = 0);

// Residual weight outside the |0> phase register after one marking pass on
// the uniform input; 0 up to numerics when every theta_a sits on the grid.
double threshold_marking_ancilla_residual(const OracleHandle& stochastic_oracle, double p_min,
                                          std::size_t l);

}  // namespace qrl
