#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "qrl/core/rng.hpp"
#include "qrl/env/environment.hpp"
#include "qrl/env/fixture_io.hpp"
#include "qrl/oracle/oracle.hpp"
#include "qrl/search/grover.hpp"
#include "qrl/search/phase_estimation.hpp"
#include "qrl/search/structural.hpp"
#include "qrl/search/threshold_search.hpp"

using namespace qrl;

namespace {

constexpr double kPi = std::numbers::pi;

EpochalDeterministicEnv marked_env(std::size_t n, std::size_t M, std::size_t num_marked) {
  auto reward = [n, M, num_marked](const std::vector<std::size_t>& prefix) {
    if (prefix.size() != M) return 0;
    std::size_t idx = 0;
    for (auto a : prefix) idx = idx * n + a;
    return idx < num_marked ? 1 : 0;
  };
  auto percept = [](const std::vector<std::size_t>&) { return std::size_t{0}; };
  return EpochalDeterministicEnv(Alphabet(n, 1), M, percept, reward, 1);
}

Verifier diagonal_verifier(const OracleHandle& oracle) {
  return [&oracle](std::size_t a) { return oracle.diagonal()[a].real() < 0.0; };
}

}  // namespace

TEST_CASE("the closed-form amplification law matches dense simulation") {
  struct Case {
    std::size_t M, m, k;
  };
  for (const Case& c : {Case{2, 1, 1}, Case{2, 2, 1}, Case{4, 1, 3}, Case{4, 4, 2},
                        Case{6, 1, 6}, Case{6, 2, 4}, Case{6, 16, 1}}) {
    std::size_t N = std::size_t{1} << c.M;
    auto oracle = build_phase_flip_oracle(marked_env(2, c.M, c.m));
    double sim = grover_marked_probability(oracle, c.k);
    double closed = grover_success_probability(N, c.m, c.k);
    CHECK(std::abs(sim - closed) < 1e-9);
  }
}

TEST_CASE("four items and one flag need exactly one iteration") {
  auto oracle = build_phase_flip_oracle(marked_env(2, 2, 1));
  CHECK(grover_marked_probability(oracle, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sixty-four items reach the known success level after six iterations") {
  auto oracle = build_phase_flip_oracle(marked_env(2, 6, 1));
  double p = grover_marked_probability(oracle, 6);
  double closed = std::pow(std::sin(13.0 * std::asin(1.0 / 8.0)), 2);
  CHECK(std::abs(p - closed) < 1e-9);
  CHECK(p == doctest::Approx(0.9966).epsilon(1e-3));
}

TEST_CASE("fixed-iteration search verifies its candidate and counts queries") {
  auto oracle = build_phase_flip_oracle(marked_env(2, 2, 1));
  Rng rng(5);
  auto out = grover_fixed(oracle, 1, rng, diagonal_verifier(oracle));
  CHECK(out.success);
  CHECK(out.found == 0);
  CHECK(out.oracle_queries == 1);
  CHECK(out.interaction_steps == 2);
}

TEST_CASE("a fully rewarded space is solved by the opening sample") {
  auto oracle = build_phase_flip_oracle(marked_env(2, 2, 4));
  Rng rng(7);
  auto out = grover_randomized(oracle, 4, rng, diagonal_verifier(oracle));
  CHECK(out.success);
  CHECK(out.oracle_queries == 1);
  CHECK(out.interaction_steps == 2);
}

TEST_CASE("the randomized schedule finds the unique winner and verifies it") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto env = EpochalDeterministicEnv::single_win(2, 4, {1, 0, 1, 1});
    auto oracle = build_phase_flip_oracle(env);
    Rng rng(seed);
    auto out = grover_randomized(oracle, 16, rng, diagonal_verifier(oracle));
    REQUIRE(out.success);
    CHECK(*out.found == env.sequence_index({1, 0, 1, 1}));
    CHECK(env.epoch_reward(env.sequence_from_index(*out.found)) == 1);
    CHECK(out.interaction_steps == out.oracle_queries * 4);
  }
}

TEST_CASE("an empty reward landscape exhausts the budget without a claim") {
  auto oracle = build_phase_flip_oracle(marked_env(2, 3, 0));
  Rng rng(9);
  auto out = grover_randomized(oracle, 8, rng, diagonal_verifier(oracle));
  CHECK_FALSE(out.success);
  CHECK_FALSE(out.found.has_value());
  CHECK(out.oracle_queries >= static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(8.0))));
}

TEST_CASE("threshold zero is satisfied by the first attempt") {
  auto env = marked_env(2, 2, 1);
  auto oracle = build_counting_oracle(env);
  Rng rng(11);
  auto out = amplitude_amplify_threshold(oracle, 0, rng);
  CHECK(out.success);
  CHECK(out.oracle_queries == 1);
}

TEST_CASE("threshold hits are always genuine") {
  // Totals 0..2 spread over 8 sequences.
  auto env = EpochalDeterministicEnv(
      Alphabet(2, 1), 3, [](const std::vector<std::size_t>&) { return std::size_t{0}; },
      [](const std::vector<std::size_t>& p) {
        return p.size() >= 2 ? static_cast<int>(p.back()) : 0;
      },
      1);
  auto oracle = build_counting_oracle(env);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    auto out = amplitude_amplify_threshold(oracle, 2, rng);
    REQUIRE(out.success);
    CHECK(env.total_reward(env.sequence_from_index(*out.found)) >= 2);
  }
}

TEST_CASE("an unreachable threshold reports no find") {
  auto oracle = build_counting_oracle(marked_env(2, 2, 1));
  Rng rng(13);
  auto out = amplitude_amplify_threshold(oracle, 3, rng);
  CHECK_FALSE(out.found.has_value());
  CHECK_FALSE(out.success);
}

TEST_CASE("max finding on a flat landscape matches the trivial maximum") {
  auto oracle = build_counting_oracle(marked_env(2, 2, 4));
  Rng rng(17);
  auto out = find_max_reward(oracle, rng);
  CHECK(out.success);
  CHECK(oracle.counted_total(*out.found) == 1);
}

TEST_CASE("max finding locates a lone peak in most seeded runs") {
  // Eight sequences, a single total of 2 at the last one.
  auto env = EpochalDeterministicEnv(
      Alphabet(2, 1), 3, [](const std::vector<std::size_t>&) { return std::size_t{0}; },
      [](const std::vector<std::size_t>& p) {
        if (p.size() < 2) return 0;
        for (auto a : p)
          if (a != 1) return 0;
        return 1;
      },
      1);
  auto oracle = build_counting_oracle(env);
  REQUIRE(oracle.counted_total(7) == 2);
  std::size_t hits = 0;
  const std::size_t runs = 300;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    Rng rng(1000 + seed);
    auto out = find_max_reward(oracle, rng);
    if (out.success && oracle.counted_total(*out.found) == 2) ++hits;
  }
  CHECK(static_cast<double>(hits) / runs >= 0.85);
}

TEST_CASE("exactly representable reward probabilities estimate perfectly") {
  StochasticEpochalEnv env(Alphabet(2, 1), 2, {0.0, 0.5, 1.0, 0.5});
  auto oracle = build_stochastic_oracle(env);
  Rng rng(19);
  for (int shot = 0; shot < 25; ++shot) {
    auto e0 = phase_estimate_reward(oracle, 0, 3, rng);
    CHECK(std::abs(e0.theta_estimate - 0.0) < 1e-9);
    auto e1 = phase_estimate_reward(oracle, 1, 3, rng);
    CHECK(std::abs(e1.theta_estimate - kPi / 4.0) < 1e-9);
    CHECK(std::abs(e1.p_estimate - 0.5) < 1e-9);
    auto e2 = phase_estimate_reward(oracle, 2, 2, rng);
    CHECK(std::abs(e2.theta_estimate - kPi / 2.0) < 1e-9);
  }
}

TEST_CASE("estimator cost and grid invariants") {
  StochasticEpochalEnv env(Alphabet(2, 1), 2, {0.3, 0.5, 0.9, 0.1});
  auto oracle = build_stochastic_oracle(env);
  Rng rng(23);
  for (std::size_t l : {std::size_t{2}, std::size_t{4}}) {
    auto e = phase_estimate_reward(oracle, 0, l, rng);
    CHECK(e.oracle_queries == (std::size_t{1} << l) - 1);
    CHECK(e.interaction_steps == e.oracle_queries * 2);
    double grid = e.theta_estimate * static_cast<double>(std::size_t{1} << l) / kPi;
    CHECK(std::abs(grid - std::round(grid)) < 1e-9);
    CHECK(e.theta_estimate >= 0.0);
    CHECK(e.theta_estimate <= kPi / 2.0 + 1e-12);
  }
  CHECK(default_estimator_bits(0.25) == 5);
  CHECK_THROWS_AS(phase_estimate_reward(oracle, 0, 14, rng), ResourceError);
}

TEST_CASE("a uniformly qualifying table is amplified in one marking") {
  StochasticEpochalEnv env(Alphabet(2, 1), 2, {0.9, 0.9, 0.9, 0.9});
  auto oracle = build_stochastic_oracle(env);
  Rng rng(29);
  auto out = amplify_above_pmin(oracle, 0.5, 4, rng);
  CHECK(out.success);
  CHECK(out.oracle_queries == 1);
  CHECK(out.interaction_steps == 15 * 2);
}

TEST_CASE("threshold amplification returns only qualifying sequences") {
  std::vector<double> probs(16, 0.1);
  probs[3] = probs[7] = probs[11] = probs[15] = 0.9;
  StochasticEpochalEnv env(Alphabet(2, 1), 4, probs);
  auto oracle = build_stochastic_oracle(env);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(seed);
    auto out = amplify_above_pmin(oracle, 0.5, 4, rng);
    REQUIRE(out.success);
    CHECK(env.reward_prob(*out.found) == doctest::Approx(0.9));
    CHECK_FALSE(out.ambiguous_threshold);
    CHECK(out.interaction_steps == out.oracle_queries * 15 * 4);
  }
}

TEST_CASE("a reward probability inside the grid cell raises the ambiguity flag") {
  // arcsin(sqrt(0.5)) = pi/4 sits within pi/2^l of itself.
  StochasticEpochalEnv env(Alphabet(2, 1), 1, {0.5, 0.9});
  auto oracle = build_stochastic_oracle(env);
  Rng rng(31);
  auto out = amplify_above_pmin(oracle, 0.5, 3, rng);
  CHECK(out.ambiguous_threshold);
}

TEST_CASE("marking leaves the phase register clean on grid-exact tables") {
  // Angles that are exact multiples of pi/16 estimate without leakage.
  double lo = std::pow(std::sin(2.0 * kPi / 16.0), 2);
  double hi = std::pow(std::sin(6.0 * kPi / 16.0), 2);
  std::vector<double> probs(16, lo);
  for (std::size_t i = 0; i < 4; ++i) probs[i] = hi;
  StochasticEpochalEnv env(Alphabet(2, 1), 4, probs);
  auto oracle = build_stochastic_oracle(env);
  CHECK(threshold_marking_ancilla_residual(oracle, 0.5, 4) < 1e-9);
}

TEST_CASE("pair sampling on a point-mass table returns the unique winning pair") {
  StochasticEpochalEnv env(Alphabet(2, 2), 1, {0.0, 1.0},
                           [](const std::vector<std::size_t>& s, const std::vector<std::size_t>& a) {
                             return (s[0] == 1 && a[0] == 1) ? 1 : 0;
                           });
  auto oracle = build_purified_env_unitary(env);
  Rng rng(37);
  auto out = sample_rewarding_pair(oracle, rng);
  REQUIRE(out.success);
  CHECK(out.a_index == 1);
  CHECK(out.s_index == 1);
}

TEST_CASE("sampled pairs are always jointly rewarded on the two-percept game") {
  EnvFixture fx;
  fx.kind = FixtureKind::invasion_game;
  fx.n = 2;
  fx.M = 1;
  fx.num_percepts = 3;
  fx.correct_action = {1, 0};
  fx.validate();
  auto env = fx.build_stochastic();
  auto oracle = build_purified_env_unitary(env);
  std::size_t S = env.alphabet().num_percepts();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    auto out = sample_rewarding_pair(oracle, rng);
    REQUIRE(out.success);
    std::vector<std::size_t> s_seq = {out.s_index % S};
    std::vector<std::size_t> a_seq = {out.a_index};
    CHECK(env.joint_reward(s_seq, a_seq) == 1);
    CHECK(out.interaction_steps == out.oracle_queries * 1);
  }
}

TEST_CASE("pair sampling refuses an unrewardable game") {
  StochasticEpochalEnv env(Alphabet(2, 2), 1, {0.0, 1.0},
                           [](const std::vector<std::size_t>&, const std::vector<std::size_t>&) {
                             return 0;
                           });
  auto oracle = build_purified_env_unitary(env);
  Rng rng(41);
  CHECK_THROWS_AS(sample_rewarding_pair(oracle, rng), std::invalid_argument);
}
