#include "qrl/env/interact.hpp"

#include <cmath>
#include <stdexcept>

namespace qrl {

double rate(const History& h, std::size_t epoch_length) {
  if (!h.well_formed()) throw std::invalid_argument("rate: malformed history");
  if (epoch_length == 0) throw std::invalid_argument("rate: epoch length must be >= 1");
  std::size_t completed = h.steps() / epoch_length;
  if (completed == 0) return 0.0;
  std::size_t rewarded = 0;
  for (std::size_t e = 0; e < completed; ++e) {
    // percepts[0] is the opening eps; epoch e spans percepts [eM+1, (e+1)M].
    for (std::size_t i = e * epoch_length + 1; i <= (e + 1) * epoch_length; ++i) {
      if (h.percepts[i].reward > 0) {
        ++rewarded;
        break;
      }
    }
  }
  return static_cast<double>(rewarded) / static_cast<double>(completed);
}

double MeritFunction::operator()(const History& h) const {
  if (horizon == 0 || horizon >= h.steps()) return rate(h, epoch_length);
  History head;
  head.actions.assign(h.actions.begin(), h.actions.begin() + horizon);
  head.percepts.assign(h.percepts.begin(), h.percepts.begin() + horizon + 1);
  return rate(head, epoch_length);
}

History interact(Agent& agent, EpochalDeterministicEnv& env, std::size_t steps, Rng& rng) {
  History h;
  RewardedPercept last{};
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t a = agent.act(last, rng);
    last = env.step(a);
    agent.learn(last);
    h.record(a, last);
  }
  return h;
}

std::unique_ptr<Agent> condition_agent(const AgentFactory& factory, const History& h,
                                       std::size_t restart_cap, Rng& rng) {
  if (!h.well_formed()) throw std::invalid_argument("condition_agent: malformed history");
  for (std::size_t attempt = 0; attempt < restart_cap; ++attempt) {
    auto agent = factory();
    bool match = true;
    for (std::size_t t = 0; t < h.steps(); ++t) {
      if (agent->act(h.percepts[t], rng) != h.actions[t]) {
        match = false;
        break;
      }
      agent->learn(h.percepts[t + 1]);
    }
    if (match) return agent;
  }
  throw InfeasibleHistoryError("history not reproduced within the restart cap");
}

EpochalDeterministicEnv condition_env(const EnvFactory& factory, const History& h) {
  if (!h.well_formed()) throw std::invalid_argument("condition_env: malformed history");
  EpochalDeterministicEnv env = factory();
  for (std::size_t t = 0; t < h.steps(); ++t) {
    RewardedPercept got = env.step(h.actions[t]);
    if (!(got == h.percepts[t + 1])) {
      throw std::invalid_argument("condition_env: history inconsistent with environment");
    }
  }
  return env;
}

LuckFavoringReport luck_favoring_check(const AgentFactory& agent_factory,
                                       const EnvFactory& env_factory, const History& h,
                                       const History& h2, std::size_t T, std::size_t trials,
                                       Rng& rng, std::size_t restart_cap) {
  if (h.steps() != h2.steps()) {
    throw std::invalid_argument("luck_favoring_check: histories must have equal length");
  }
  if (trials == 0) throw std::invalid_argument("luck_favoring_check: trials must be >= 1");
  std::size_t M = env_factory().epoch_length();

  auto future_rate = [&](const History& past, double& out_mean, double& out_se) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
      auto agent = condition_agent(agent_factory, past, restart_cap, rng);
      EpochalDeterministicEnv env = condition_env(env_factory, past);
      History fut = interact(*agent, env, T, rng);
      double r = rate(fut, M);
      sum += r;
      sq += r * r;
    }
    out_mean = sum / static_cast<double>(trials);
    double var = sq / static_cast<double>(trials) - out_mean * out_mean;
    if (var < 0.0) var = 0.0;
    out_se = std::sqrt(var / static_cast<double>(trials));
  };

  LuckFavoringReport rep;
  rep.past_rate_h = rate(h, M);
  rep.past_rate_h2 = rate(h2, M);
  future_rate(h, rep.rate_h, rep.stderr_h);
  future_rate(h2, rep.rate_h2, rep.stderr_h2);

  // Ordering tolerance: three combined standard errors.
  double slack = 3.0 * (rep.stderr_h + rep.stderr_h2);
  if (rep.past_rate_h >= rep.past_rate_h2) {
    rep.holds = rep.rate_h >= rep.rate_h2 - slack;
  } else {
    rep.holds = rep.rate_h2 >= rep.rate_h - slack;
  }
  return rep;
}

}  // namespace qrl
