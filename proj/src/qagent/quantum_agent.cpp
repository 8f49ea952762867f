#include "qrl/qagent/quantum_agent.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qrl/oracle/oracle.hpp"

namespace qrl {

std::string ComparisonReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["M"] = M;
  j["k"] = k;
  j["epsilon"] = epsilon;
  j["T_eval"] = T_eval;
  j["steps_q"] = steps_q;
  j["steps_c"] = steps_c;
  j["oracle_queries"] = oracle_queries;
  j["rate_q"] = rate_q;
  j["rate_c"] = rate_c;
  j["gap"] = gap;
  j["exploration_failed"] = exploration_failed;
  return j.dump();
}

std::string ComparisonReport::csv_header() {
  return "n,M,k,epsilon,T_eval,steps_q,steps_c,rate_q,rate_c,gap,failure_flag";
}

std::string ComparisonReport::csv_row() const {
  std::ostringstream os;
  os.precision(12);
  os << n << ',' << M << ',' << k << ',' << epsilon << ',' << T_eval << ',' << steps_q << ','
     << steps_c << ',' << rate_q << ',' << rate_c << ',' << gap << ','
     << (exploration_failed ? 1 : 0);
  return os.str();
}

SearchOutcome quantum_exploration(const OracleHandle& phase_oracle, std::size_t k, Rng& rng) {
  std::size_t N = phase_oracle.layout().dim(0);
  std::size_t budget =
      static_cast<std::size_t>(std::ceil(static_cast<double>(k) * std::sqrt(static_cast<double>(N))));
  const auto& diag = phase_oracle.diagonal();
  auto verify = [&diag](std::size_t a) { return diag[a].real() < 0.0; };
  return grover_randomized(phase_oracle, N, rng, verify, budget);
}

History replay_epoch(EpochalDeterministicEnv& env, const std::vector<std::size_t>& sequence,
                     Rng&) {
  if (sequence.size() != env.epoch_length()) {
    throw std::invalid_argument("replay_epoch: sequence length != M");
  }
  env.reset_epoch();
  History h;
  for (auto a : sequence) h.record(a, env.step(a));
  return h;
}

std::unique_ptr<Agent> train_simulation(const AgentFactory& inner_factory, const History& h_win,
                                        std::size_t repetitions, std::size_t restart_cap,
                                        Rng& rng) {
  if (!h_win.well_formed()) throw std::invalid_argument("train_simulation: malformed history");
  std::size_t M = h_win.steps();
  for (std::size_t restart = 0; restart < restart_cap; ++restart) {
    auto agent = inner_factory();
    std::size_t wins = 0;
    bool alive = true;
    while (alive && wins < repetitions) {
      for (std::size_t t = 0; t < M; ++t) {
        if (agent->act(h_win.percepts[t], rng) != h_win.actions[t]) {
          alive = false;
          break;
        }
        agent->learn(h_win.percepts[t + 1]);
      }
      if (alive) ++wins;
    }
    if (wins == repetitions) return agent;
  }
  throw TrainingError("inner simulation never produced the winning epochs within the cap");
}

ComparisonReport run_quantum_enhanced(const AgentFactory& inner_factory,
                                      const EpochalDeterministicEnv& env, std::size_t k,
                                      std::size_t T_eval, Rng& rng, std::size_t restart_cap) {
  std::size_t N = env.num_sequences();
  std::size_t M = env.epoch_length();
  // Single-win promise, checked by brute force.
  std::size_t winners = 0;
  std::vector<std::size_t> winner;
  for (std::size_t a = 0; a < N; ++a) {
    auto seq = env.sequence_from_index(a);
    if (env.epoch_reward(seq) > 0) {
      ++winners;
      winner = seq;
    }
  }
  if (winners != 1) {
    throw std::invalid_argument("quantum-enhanced pipeline needs exactly one winning sequence");
  }

  ComparisonReport rep;
  rep.n = env.num_actions();
  rep.M = M;
  rep.k = k;
  rep.T_eval = T_eval;
  std::size_t budget =
      static_cast<std::size_t>(std::ceil(static_cast<double>(k) * std::sqrt(static_cast<double>(N))));
  // Fixed untested window: the full exploration budget plus the replay epoch.
  std::size_t t_pre = budget * M + M;
  rep.steps_q = t_pre;
  rep.steps_c = t_pre;

  auto oracle = build_phase_flip_oracle(env);
  auto outcome = quantum_exploration(oracle, k, rng);
  rep.oracle_queries = outcome.oracle_queries;

  std::unique_ptr<Agent> handover;
  if (outcome.success) {
    EpochalDeterministicEnv replay_env = env.fresh_copy();
    History h_win = replay_epoch(replay_env, env.sequence_from_index(*outcome.found), rng);
    std::size_t repetitions = 1 + budget;
    handover = train_simulation(inner_factory, h_win, repetitions, restart_cap, rng);
  } else {
    rep.exploration_failed = true;
    handover = inner_factory();
  }

  EpochalDeterministicEnv eval_env = env.fresh_copy();
  History h_eval = interact(*handover, eval_env, T_eval, rng);
  rep.rate_q = rate(h_eval, M);

  // Baseline arm: plain inner agent over the identical total budget.
  auto baseline = inner_factory();
  EpochalDeterministicEnv base_env = env.fresh_copy();
  History h_base = interact(*baseline, base_env, t_pre + T_eval, rng);
  History tail;
  tail.actions.assign(h_base.actions.begin() + t_pre, h_base.actions.end());
  tail.percepts.resize(1);
  tail.percepts.insert(tail.percepts.end(), h_base.percepts.begin() + t_pre + 1,
                       h_base.percepts.end());
  rep.rate_c = rate(tail, M);

  rep.gap = rep.rate_q / std::max(rep.rate_c, 1e-12);
  return rep;
}

}  // namespace qrl
