#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qrl/oracle/oracle.hpp"

namespace qrl {

struct SearchOutcome {
  std::optional<std::size_t> found;
  std::size_t oracle_queries = 0;
  std::size_t interaction_steps = 0;  // oracle_queries * M
  bool success = false;               // claim re-verified against the environment
  bool ambiguous_threshold = false;   // promise-gap warning (threshold estimators)

  std::string to_json() const;
};

// Brute-force re-check of a candidate. The randomized search charges one
// query per check (a test epoch against the real environment); the analytic
// helpers do not.
using Verifier = std::function<bool(std::size_t)>;

// 2|u><u| - I on the first register, identity on the rest.
void reflect_about_uniform(StateVector& psi, std::size_t seq_dim);

// sin^2((2k+1) arcsin sqrt(m/N)).
double grover_success_probability(std::size_t N, std::size_t m, std::size_t iterations);

// Probability mass on the marked items after `iterations` fixed Grover
// iterations from the uniform state (dense simulation).
double grover_marked_probability(const OracleHandle& phase_oracle, std::size_t iterations);

// Fixed-iteration Grover: k iterations, one measurement.
SearchOutcome grover_fixed(const OracleHandle& phase_oracle, std::size_t iterations, Rng& rng,
                           const Verifier& verify);

// Unknown-marked-count schedule: one classical opening sample, then Grover
// attempts with iteration counts drawn from a bound growing by factor 6/5 per
// failed attempt, until a candidate verifies or the query budget (default
// 10 sqrt(N)) runs out. Every attempt ends with a verification epoch charged
// as one query.
SearchOutcome grover_randomized(const OracleHandle& phase_oracle, std::size_t N, Rng& rng,
                                const Verifier& verify, std::size_t budget = 0);

}  // namespace qrl
