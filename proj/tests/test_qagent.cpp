#include <cmath>
#include <memory>
#include <vector>

#include <doctest.h>

#include "qrl/env/agent.hpp"
#include "qrl/env/environment.hpp"
#include "qrl/env/interact.hpp"
#include "qrl/oracle/oracle.hpp"
#include "qrl/qagent/quantum_agent.hpp"

using namespace qrl;

namespace {

AgentFactory greedy_factory(double epsilon, std::size_t n, std::size_t M) {
  return [=] { return std::make_unique<EpsilonGreedyAgent>(epsilon, n, M); };
}

}  // namespace

TEST_CASE("a two-item search spends its budget honestly and never lies") {
  auto env = EpochalDeterministicEnv::single_win(2, 1, {1});
  std::size_t budget = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(2.0)));
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto oracle = build_phase_flip_oracle(env);
    Rng rng(seed);
    auto out = quantum_exploration(oracle, 2, rng);
    CHECK(out.oracle_queries <= budget + 1);
    CHECK(out.interaction_steps == out.oracle_queries * 1);
    if (out.success) {
      CHECK(*out.found == 1);
      ++successes;
    }
  }
  // Opening sample alone succeeds half the time; the follow-up attempt adds more.
  CHECK(successes >= 120);
}

TEST_CASE("exploration steps are charged at epoch length per query") {
  auto env = EpochalDeterministicEnv::single_win(2, 6, {1, 0, 0, 1, 1, 0});
  auto oracle = build_phase_flip_oracle(env);
  Rng rng(3);
  auto out = quantum_exploration(oracle, 5, rng);
  CHECK(out.interaction_steps == out.oracle_queries * 6);
  CHECK(out.oracle_queries <= static_cast<std::size_t>(std::ceil(5.0 * 8.0)));
}

TEST_CASE("replaying the winner yields the rewarded closing percept") {
  auto env = EpochalDeterministicEnv::single_win(2, 3, {0, 1, 1});
  Rng rng(5);
  History h = replay_epoch(env, {0, 1, 1}, rng);
  CHECK(h.steps() == 3);
  CHECK(h.percepts.back().reward == 1);
  CHECK(h.total_reward() == 1);

  History miss = replay_epoch(env, {1, 1, 1}, rng);
  CHECK(miss.total_reward() == 0);

  // Percepts agree with the brute-force response table.
  auto resp = env.respond({0, 1, 1});
  for (std::size_t t = 0; t < 3; ++t) CHECK(h.percepts[t + 1] == resp[t]);

  CHECK_THROWS_AS(replay_epoch(env, {0, 1}, rng), std::invalid_argument);
}

TEST_CASE("training with one repetition conditions on a single winning epoch") {
  auto env = EpochalDeterministicEnv::single_win(2, 2, {1, 0});
  Rng rng(7);
  History h_win = replay_epoch(env, {1, 0}, rng);
  auto trained = train_simulation(greedy_factory(1.0, 2, 2), h_win, 1, kDefaultRestartCap, rng);
  // The exploit-only learner now replays the winner every epoch.
  auto eval_env = env.fresh_copy();
  History h = interact(*trained, eval_env, 10, rng);
  CHECK(h.total_reward() == 5);
}

TEST_CASE("training survives many required repetitions without real steps") {
  auto env = EpochalDeterministicEnv::single_win(2, 2, {0, 1});
  Rng rng(11);
  History h_win = replay_epoch(env, {0, 1}, rng);
  auto trained = train_simulation(greedy_factory(1.0, 2, 2), h_win, 9, kDefaultRestartCap, rng);
  auto eval_env = env.fresh_copy();
  CHECK(interact(*trained, eval_env, 6, rng).total_reward() == 3);
}

TEST_CASE("training on an unreachable record gives up at the cap") {
  // The recorded actions repeat an unrewarded epoch, which the
  // without-replacement explorer cannot produce twice.
  History impossible;
  impossible.record(0, RewardedPercept{0, 0});
  impossible.record(0, RewardedPercept{0, 0});
  Rng rng(13);
  CHECK_THROWS_AS(
      train_simulation(greedy_factory(1.0, 2, 2), impossible, 2, 50, rng), TrainingError);
}

TEST_CASE("a short horizon favors the enhanced agent over its inner model") {
  // 32 sequences but only 18 classical epochs before evaluation: the baseline
  // usually has not met the winner yet, the enhanced arm almost always has.
  auto env = EpochalDeterministicEnv::single_win(2, 5, {0, 1, 1, 0, 1});
  std::size_t k = 3;
  std::size_t budget = static_cast<std::size_t>(std::ceil(3.0 * std::sqrt(32.0)));
  std::size_t t_pre = budget * 5 + 5;
  std::size_t T_eval = 40;
  double mean_q = 0.0, mean_c = 0.0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    Rng rng(100 + t);
    auto rep = run_quantum_enhanced(greedy_factory(1.0, 2, 5), env, k, T_eval, rng);
    CHECK(rep.steps_q == t_pre);
    CHECK(rep.steps_c == t_pre);
    CHECK(rep.n == 2);
    CHECK(rep.M == 5);
    CHECK(rep.T_eval == T_eval);
    mean_q += rep.rate_q;
    mean_c += rep.rate_c;
  }
  mean_q /= trials;
  mean_c /= trials;
  CHECK(mean_q >= 0.9);
  CHECK(mean_q > mean_c);
}

TEST_CASE("the pipeline rejects environments without a unique winner") {
  auto no_winner = EpochalDeterministicEnv(
      Alphabet(2, 1), 2, [](const std::vector<std::size_t>&) { return std::size_t{0}; },
      [](const std::vector<std::size_t>&) { return 0; }, 1);
  Rng rng(17);
  CHECK_THROWS_AS(run_quantum_enhanced(greedy_factory(1.0, 2, 2), no_winner, 2, 8, rng),
                  std::invalid_argument);
}

TEST_CASE("comparison rows serialize with the documented column order") {
  ComparisonReport rep;
  rep.n = 2;
  rep.M = 3;
  rep.k = 3;
  rep.epsilon = 1.0;
  rep.T_eval = 24;
  rep.steps_q = rep.steps_c = 27;
  rep.rate_q = 1.0;
  rep.rate_c = 0.25;
  rep.gap = 4.0;
  CHECK(ComparisonReport::csv_header() ==
        "n,M,k,epsilon,T_eval,steps_q,steps_c,rate_q,rate_c,gap,failure_flag");
  CHECK(rep.csv_row() == "2,3,3,1,24,27,27,1,0.25,4,0");
  CHECK(rep.to_json().find("\"exploration_failed\":false") != std::string::npos);
}

TEST_CASE("larger search allowances fail less often") {
  auto env = EpochalDeterministicEnv::single_win(2, 6, {1, 0, 1, 1, 0, 1});
  const int trials = 150;
  std::vector<double> failure;
  for (std::size_t k : {std::size_t{1}, std::size_t{4}}) {
    int failed = 0;
    for (int t = 0; t < trials; ++t) {
      auto oracle = build_phase_flip_oracle(env);
      Rng rng(10000 + 100 * k + t);
      if (!quantum_exploration(oracle, k, rng).success) ++failed;
    }
    failure.push_back(static_cast<double>(failed) / trials);
  }
  CHECK(failure[1] <= failure[0]);
  CHECK(failure[1] < 0.05);
}
