#pragma once

#include <functional>
#include <memory>

#include "qrl/core/rng.hpp"
#include "qrl/env/agent.hpp"
#include "qrl/env/environment.hpp"
#include "qrl/env/history.hpp"

namespace qrl {

struct InfeasibleHistoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using EnvFactory = std::function<EpochalDeterministicEnv()>;

// Alternating exchange for `steps` actions, starting from the empty percept.
History interact(Agent& agent, EpochalDeterministicEnv& env, std::size_t steps, Rng& rng);

// Replay-with-post-selection: restart a fresh agent until it reproduces the
// actions of h when fed h's percepts. Throws InfeasibleHistoryError when the
// restart cap is exhausted.
std::unique_ptr<Agent> condition_agent(const AgentFactory& factory, const History& h,
                                       std::size_t restart_cap, Rng& rng);

// Environment conditioned on h: replay h's actions into a fresh instance.
EpochalDeterministicEnv condition_env(const EnvFactory& factory, const History& h);

inline constexpr std::size_t kDefaultRestartCap = 10'000'000;

struct LuckFavoringReport {
  double rate_h = 0.0;
  double rate_h2 = 0.0;
  double stderr_h = 0.0;
  double stderr_h2 = 0.0;
  double past_rate_h = 0.0;
  double past_rate_h2 = 0.0;
  bool holds = false;
};

// Monte-Carlo check of the luck-favoring implication: conditions agent and
// environment on h and h2 (equal lengths required), runs T further steps per
// trial, and compares the mean future rates against the past-rate ordering.
LuckFavoringReport luck_favoring_check(const AgentFactory& agent_factory,
                                       const EnvFactory& env_factory, const History& h,
                                       const History& h2, std::size_t T, std::size_t trials,
                                       Rng& rng,
                                       std::size_t restart_cap = kDefaultRestartCap);

}  // namespace qrl
