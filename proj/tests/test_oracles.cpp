#include <cmath>
#include <cstdio>
#include <vector>

#include <doctest.h>

#include "qrl/core/constants.hpp"
#include "qrl/core/rng.hpp"
#include "qrl/env/environment.hpp"
#include "qrl/env/fixture_io.hpp"
#include "qrl/oracle/oracle.hpp"

using namespace qrl;

namespace {

// Deterministic env with all-eps percepts and a binary reward on the last
// action of the epoch, taken from a table indexed by sequence.
EpochalDeterministicEnv table_env(std::size_t n, std::size_t M, std::vector<int> last_step_reward) {
  auto reward = [n, M, last_step_reward](const std::vector<std::size_t>& prefix) {
    if (prefix.size() != M) return 0;
    std::size_t idx = 0;
    for (auto a : prefix) idx = idx * n + a;
    return last_step_reward[idx];
  };
  auto percept = [](const std::vector<std::size_t>&) { return std::size_t{0}; };
  return EpochalDeterministicEnv(Alphabet(n, 1), M, percept, reward, 1);
}

}  // namespace

TEST_CASE("a silent environment oracularizes to the identity") {
  auto env = table_env(2, 2, {0, 0, 0, 0});
  auto oracle = build_reversible_env_unitary(env);
  for (std::size_t i = 0; i < oracle.layout().total_dim(); ++i) {
    StateVector psi(oracle.layout(), i);
    oracle.apply(psi);
    CHECK(std::abs(psi.amp(i) - cplx{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("the reversible oracle writes the response code next to the input") {
  // n=2, M=1, percept equals the chosen action.
  auto env = EpochalDeterministicEnv(
      Alphabet(2, 2), 1, [](const std::vector<std::size_t>& p) { return p.back(); },
      [](const std::vector<std::size_t>&) { return 0; }, 1);
  auto oracle = build_reversible_env_unitary(env);
  const auto& layout = oracle.layout();
  REQUIRE(layout.dim(0) == 2);
  REQUIRE(layout.dim(1) == 2);

  auto enc = PerceptBlockEncoding::build(env);
  CHECK(enc.total_bits == 1);
  std::size_t code0 = enc.encode(env.respond({0}));
  std::size_t code1 = enc.encode(env.respond({1}));
  CHECK(code0 != code1);

  for (std::size_t a = 0; a < 2; ++a) {
    StateVector psi(layout, layout.flatten({a, 0}));
    oracle.apply(psi);
    std::size_t expect = layout.flatten({a, a == 0 ? code0 : code1});
    CHECK(std::abs(psi.amp(expect) - cplx{1.0, 0.0}) < 1e-12);
  }

  // Every column of the dense form is a basis permutation column.
  auto u = oracle.to_unitary();
  for (std::size_t c = 0; c < u.dim(); ++c) {
    double col_mass = 0.0;
    for (std::size_t r = 0; r < u.dim(); ++r) col_mass += std::norm(u.at(r, c));
    CHECK(col_mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reversible and counting oracles are their own inverses") {
  auto env = table_env(2, 2, {0, 1, 0, 1});
  CHECK(build_reversible_env_unitary(env).to_unitary().self_inverse_defect() < tol::self_inverse);
  CHECK(build_counting_oracle(env).to_unitary().self_inverse_defect() < tol::self_inverse);
}

TEST_CASE("the phase oracle of a rewardless environment is the identity") {
  auto oracle = build_phase_flip_oracle(table_env(2, 2, {0, 0, 0, 0}));
  for (const auto& d : oracle.diagonal()) CHECK(std::abs(d - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("the phase oracle flips exactly the winning sequence") {
  auto env = EpochalDeterministicEnv::single_win(2, 2, {1, 1});
  auto oracle = build_phase_flip_oracle(env);
  const auto& diag = oracle.diagonal();
  REQUIRE(diag.size() == 4);
  CHECK(std::abs(diag[0] - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(diag[1] - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(diag[2] - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(diag[3] - cplx{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("phase oracles match brute-force reward evaluation on random tables") {
  Rng rng(97);
  for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
    for (std::size_t M : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
      std::size_t N = 1;
      for (std::size_t i = 0; i < M; ++i) N *= n;
      std::vector<int> table(N);
      for (auto& v : table) v = rng.bernoulli(0.3) ? 1 : 0;
      auto env = table_env(n, M, table);
      auto oracle = build_phase_flip_oracle(env);
      std::size_t flipped = 0;
      for (std::size_t a = 0; a < N; ++a) {
        double want = table[a] ? -1.0 : 1.0;
        CHECK(std::abs(oracle.diagonal()[a] - cplx{want, 0.0}) < 1e-12);
        if (table[a]) ++flipped;
      }
      std::size_t brute = 0;
      for (std::size_t a = 0; a < N; ++a) {
        if (env.epoch_reward(env.sequence_from_index(a)) == 1) ++brute;
      }
      CHECK(flipped == brute);
    }
  }
}

TEST_CASE("the counting oracle totals the per-step rewards of an epoch") {
  // Per-step rewards equal the action chosen from the second step on, so the
  // sequence (0,1,1) earns (0,1,1).
  auto env = EpochalDeterministicEnv(
      Alphabet(2, 1), 3, [](const std::vector<std::size_t>&) { return std::size_t{0}; },
      [](const std::vector<std::size_t>& p) {
        return p.size() >= 2 ? static_cast<int>(p.back()) : 0;
      },
      1);
  auto oracle = build_counting_oracle(env);
  CHECK(oracle.counted_total(env.sequence_index({0, 0, 0})) == 0);
  CHECK(oracle.counted_total(env.sequence_index({0, 1, 1})) == 2);
  CHECK(oracle.counted_total(env.sequence_index({1, 1, 1})) == 2);
  for (std::size_t a = 0; a < env.num_sequences(); ++a) {
    CHECK(oracle.counted_total(a) ==
          static_cast<std::size_t>(env.total_reward(env.sequence_from_index(a))));
  }
}

TEST_CASE("the reward rotation realizes the promised probabilities") {
  StochasticEpochalEnv env(Alphabet(2, 1), 1, {0.0, 0.25});
  auto oracle = build_stochastic_oracle(env);
  const auto& layout = oracle.layout();

  StateVector zero(layout, layout.flatten({0, 0}));
  oracle.apply(zero);
  CHECK(std::abs(zero.amp(layout.flatten({0, 0})) - cplx{1.0, 0.0}) < 1e-12);

  StateVector quarter(layout, layout.flatten({1, 0}));
  oracle.apply(quarter);
  CHECK(std::abs(quarter.amp(layout.flatten({1, 0})) - cplx{std::sqrt(0.75), 0.0}) < 1e-10);
  CHECK(std::abs(quarter.amp(layout.flatten({1, 1})) - cplx{0.5, 0.0}) < 1e-10);
  CHECK(quarter.collapse({1}, {1}).probability == doctest::Approx(0.25).epsilon(1e-10));

  StochasticEpochalEnv sure(Alphabet(2, 1), 1, {1.0, 0.5});
  auto sure_oracle = build_stochastic_oracle(sure);
  StateVector one(sure_oracle.layout(), sure_oracle.layout().flatten({0, 0}));
  sure_oracle.apply(one);
  CHECK(std::abs(one.amp(sure_oracle.layout().flatten({0, 1})) - cplx{1.0, 0.0}) < 1e-10);

  CHECK_THROWS(StochasticEpochalEnv(Alphabet(2, 1), 1, {0.5, 1.5}));
}

TEST_CASE("the self-inverse rotation variant squares to the identity") {
  StochasticEpochalEnv env(Alphabet(2, 1), 1, {0.3, 0.7});
  auto oracle = build_stochastic_oracle(env, true);
  CHECK(oracle.to_unitary().self_inverse_defect() < tol::self_inverse);
}

TEST_CASE("rotation marginals match the table for every sequence") {
  StochasticEpochalEnv env(Alphabet(2, 1), 2, {0.1, 0.4, 0.8, 0.65});
  auto oracle = build_stochastic_oracle(env);
  const auto& layout = oracle.layout();
  for (std::size_t a = 0; a < 4; ++a) {
    StateVector psi(layout, layout.flatten({a, 0}));
    oracle.apply(psi);
    CHECK(psi.collapse({1}, {1}).probability ==
          doctest::Approx(env.reward_prob(a)).epsilon(1e-10));
    CHECK(oracle.angle(a) == doctest::Approx(std::asin(std::sqrt(env.reward_prob(a)))));
  }
}

TEST_CASE("the purified oracle exposes the strategy overlap") {
  EnvFixture fx;
  fx.kind = FixtureKind::invasion_game;
  fx.n = 2;
  fx.M = 1;
  fx.num_percepts = 3;
  fx.correct_action = {1, 0};
  fx.validate();
  CHECK(fx.gamma_squared() == doctest::Approx(0.5).epsilon(1e-12));

  auto env = fx.build_stochastic();
  auto oracle = build_purified_env_unitary(env);
  CHECK(oracle.gamma() * oracle.gamma() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("the purified reward marginal equals the classical average") {
  EnvFixture fx;
  fx.kind = FixtureKind::invasion_game;
  fx.n = 3;
  fx.M = 1;
  fx.num_percepts = 4;
  fx.correct_action = {0, 2, 1};
  fx.validate();
  auto env = fx.build_stochastic();
  auto oracle = build_purified_env_unitary(env);
  const auto& layout = oracle.layout();

  std::size_t N = layout.dim(0);
  std::vector<cplx> amps(layout.total_dim(), cplx{0.0, 0.0});
  std::size_t block = layout.total_dim() / N;
  for (std::size_t a = 0; a < N; ++a) amps[a * block] = 1.0 / std::sqrt(static_cast<double>(N));
  StateVector psi(layout, amps);
  oracle.apply(psi);

  double classical = 0.0;
  for (std::size_t a = 0; a < N; ++a) classical += env.reward_prob(a) / static_cast<double>(N);
  std::size_t reward_reg = layout.num_registers() - 1;
  CHECK(psi.collapse({reward_reg}, {1}).probability ==
        doctest::Approx(classical).epsilon(1e-10));
}

TEST_CASE("a point-mass percept distribution degenerates to a deterministic map") {
  // Always percept s1; action 1 is the single rewarded reply.
  StochasticEpochalEnv env(Alphabet(2, 2), 1, {0.0, 1.0},
                           [](const std::vector<std::size_t>& s, const std::vector<std::size_t>& a) {
                             return (s[0] == 1 && a[0] == 1) ? 1 : 0;
                           });
  auto oracle = build_purified_env_unitary(env);
  const auto& layout = oracle.layout();
  StateVector psi(layout, layout.flatten({1, 0, 0, 0}));
  oracle.apply(psi);
  // |a=1>|0>|0>|0> -> |a=1>|s=1>|s=1>|reward=1> exactly.
  CHECK(std::abs(psi.amp(layout.flatten({1, 1, 1, 1})) - cplx{1.0, 0.0}) < 1e-10);
}

TEST_CASE("query accounting charges epoch-length steps per invocation") {
  auto env = EpochalDeterministicEnv::single_win(2, 3, {0, 1, 0});
  auto oracle = build_phase_flip_oracle(env);
  CHECK(oracle.queries() == 0);
  StateVector psi = StateVector::uniform(oracle.layout());
  oracle.apply(psi);
  oracle.apply(psi);
  oracle.apply(psi);
  CHECK(oracle.queries() == 3);
  CHECK(oracle.interaction_steps() == 9);
  oracle.reset_queries();
  CHECK(oracle.interaction_steps() == 0);
}

TEST_CASE("oracle export writes a parseable header and the dense matrix") {
  auto env = EpochalDeterministicEnv::single_win(2, 1, {1});
  auto oracle = build_phase_flip_oracle(env);
  std::string path = "oracle_export_test.bin";
  oracle.export_binary(path);
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::fseek(f, 0, SEEK_END);
  long bytes = std::ftell(f);
  std::fclose(f);
  std::remove(path.c_str());
  // Header line plus 2x2 complex doubles.
  CHECK(bytes > static_cast<long>(4 * 2 * sizeof(double)));
  CHECK(oracle.fingerprint() == build_phase_flip_oracle(env).fingerprint());
}
