#pragma once

#include <memory>
#include <string>

#include "qrl/env/interact.hpp"
#include "qrl/search/grover.hpp"

namespace qrl {

struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comparison of the quantum-enhanced agent against its classical inner model
// under equal interaction budgets before the evaluation window.
struct ComparisonReport {
  std::size_t n = 0;
  std::size_t M = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::size_t T_eval = 0;
  std::size_t steps_q = 0;  // interaction steps before evaluation (quantum arm)
  std::size_t steps_c = 0;  // ditto, classical arm (equal by construction)
  std::size_t oracle_queries = 0;
  double rate_q = 0.0;
  double rate_c = 0.0;
  double gap = 0.0;  // rate_q / rate_c, denominator floored to stay finite
  bool exploration_failed = false;

  std::string to_json() const;
  std::string csv_row() const;
  static std::string csv_header();
};

// Step 1: Grover search for the winning sequence within k sqrt(n^M) oracle
// queries; candidates verify against the oracle's own reward table.
SearchOutcome quantum_exploration(const OracleHandle& phase_oracle, std::size_t k, Rng& rng);

// Step 2: one classical epoch replaying the found sequence.
History replay_epoch(EpochalDeterministicEnv& env, const std::vector<std::size_t>& sequence,
                     Rng& rng);

// Step 3: repeat-until-success training of the inner simulation on h_win,
// requiring `repetitions` contiguous winning epochs; consumes no real steps.
std::unique_ptr<Agent> train_simulation(const AgentFactory& inner_factory, const History& h_win,
                                        std::size_t repetitions, std::size_t restart_cap,
                                        Rng& rng);

// Full pipeline plus the baseline arm; rates are measured over the T_eval
// steps that follow the fixed untested window of k sqrt(n^M) M + M steps.
ComparisonReport run_quantum_enhanced(const AgentFactory& inner_factory,
                                      const EpochalDeterministicEnv& env, std::size_t k,
                                      std::size_t T_eval, Rng& rng,
                                      std::size_t restart_cap = kDefaultRestartCap);

}  // namespace qrl
