#include <cmath>
#include <vector>

#include <doctest.h>

#include "qrl/core/density_matrix.hpp"
#include "qrl/tester/tester.hpp"

using namespace qrl;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Environment that deterministically flips the exchanged bit.
ChannelActor flip_env() {
  using T = ChannelActor::Transition;
  std::vector<std::vector<std::vector<T>>> table(1, std::vector<std::vector<T>>(2));
  table[0][0] = {T{1.0, 0, 1}};
  table[0][1] = {T{1.0, 0, 0}};
  return ChannelActor::classical_table(ActorRole::environment, 1, 2, 0, table);
}

// Agent that deterministically echoes the received bit.
ChannelActor echo_agent() {
  using T = ChannelActor::Transition;
  std::vector<std::vector<std::vector<T>>> table(1, std::vector<std::vector<T>>(2));
  table[0][0] = {T{1.0, 0, 0}};
  table[0][1] = {T{1.0, 0, 1}};
  return ChannelActor::classical_table(ActorRole::agent, 1, 2, 0, table);
}

// Agent tossing a fair coin regardless of input.
ChannelActor coin_agent() {
  using T = ChannelActor::Transition;
  std::vector<std::vector<std::vector<T>>> table(1, std::vector<std::vector<T>>(2));
  for (std::size_t y = 0; y < 2; ++y) table[0][y] = {T{0.5, 0, 0}, T{0.5, 0, 1}};
  return ChannelActor::classical_table(ActorRole::agent, 1, 2, 0, table);
}

// Agent placing the exchanged qubit into an equal superposition.
ChannelActor hadamard_agent() {
  std::vector<cplx> H = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  return ChannelActor::unitary_actor(ActorRole::agent, 1, 2, {cplx{1.0, 0.0}}, {H});
}

// Environment whose second move copies the exchanged qubit into its private
// register, entangling itself with the agent's superposition.
ChannelActor copying_env() {
  std::vector<cplx> I4(16, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i) I4[i * 4 + i] = 1.0;
  std::vector<cplx> cnot(16, cplx{0.0, 0.0});
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t y = 0; y < 2; ++y) cnot[((p ^ y) * 2 + y) * 4 + (p * 2 + y)] = 1.0;
  }
  return ChannelActor::unitary_actor(ActorRole::environment, 2, 2,
                                     {cplx{1.0, 0.0}, cplx{0.0, 0.0}}, {I4, cnot});
}

ChannelActor identity_env() {
  std::vector<cplx> I2 = {1.0, 0.0, 0.0, 1.0};
  return ChannelActor::unitary_actor(ActorRole::environment, 1, 2, {cplx{1.0, 0.0}}, {I2});
}

}  // namespace

TEST_CASE("kraus completeness is validated") {
  auto ok = flip_env();
  CHECK_NOTHROW(ok.validate());
  ChannelActor bad = ok;
  bad.steps[0].kraus[0][0] = 0.5;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("actor serialization round-trips") {
  auto actor = copying_env();
  auto back = ChannelActor::from_json(actor.to_json());
  CHECK(back.private_dim == actor.private_dim);
  CHECK(back.symbol_dim == actor.symbol_dim);
  REQUIRE(back.steps.size() == actor.steps.size());
  for (std::size_t s = 0; s < actor.steps.size(); ++s) {
    for (std::size_t k = 0; k < actor.steps[s].kraus.size(); ++k) {
      for (std::size_t i = 0; i < actor.steps[s].kraus[k].size(); ++i) {
        CHECK(std::abs(back.steps[s].kraus[k][i] - actor.steps[s].kraus[k][i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("an identity tester leaves its own registers untouched") {
  std::vector<cplx> I2 = {1.0, 0.0, 0.0, 1.0};
  std::vector<std::vector<std::vector<cplx>>> per_move(1,
                                                       std::vector<std::vector<cplx>>(2, I2));
  Tester trivial = Tester::custom(per_move);
  auto hist = run_tested_interaction(hadamard_agent(), flip_env(), trivial, 4);
  CHECK(hist.tested_moves == 4);
  CHECK(hist.rho.diagonal_prob(0) == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 1; i < hist.rho.dim(); ++i) {
    CHECK(std::abs(hist.rho.at(i, i)) < 1e-10);
  }
}

TEST_CASE("deterministic classical traffic leaves a pure recorded history") {
  auto hist = run_tested_interaction(echo_agent(), flip_env(), Tester::classical(), 3);
  // Moves: env sends 1, agent echoes 1, env flips to 0. Record = (1,1,0).
  std::size_t want = (1 * 2 + 1) * 2 + 0;
  CHECK(hist.rho.diagonal_prob(want) == doctest::Approx(1.0).epsilon(1e-10));
  double purity = 0.0;
  for (std::size_t i = 0; i < hist.rho.dim(); ++i) {
    for (std::size_t j = 0; j < hist.rho.dim(); ++j) purity += std::norm(hist.rho.at(i, j));
  }
  CHECK(purity == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a stochastic agent leaves the hand-computed history mixture") {
  auto hist = run_tested_interaction(coin_agent(), flip_env(), Tester::classical(), 2);
  // Env sends 1, agent answers 0 or 1 with weight one half each.
  CHECK(hist.rho.diagonal_prob(1 * 2 + 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(hist.rho.diagonal_prob(1 * 2 + 1) == doctest::Approx(0.5).epsilon(1e-10));
  for (std::size_t i = 0; i < hist.rho.dim(); ++i) {
    for (std::size_t j = 0; j < hist.rho.dim(); ++j) {
      if (i != j) CHECK(std::abs(hist.rho.at(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("testing does not disturb classical actors") {
  auto rep = verify_classical_interaction_invariance(coin_agent(), flip_env(), 4);
  CHECK(rep.holds);
  CHECK(rep.max_trace_distance < 1e-12);
}

TEST_CASE("testing collapses a coherent exchange") {
  auto rep = verify_classical_interaction_invariance(hadamard_agent(), copying_env(), 3);
  CHECK_FALSE(rep.holds);
  CHECK(rep.max_trace_distance == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("a dephased quantum agent interacts classically") {
  auto rep =
      verify_classical_interaction_invariance(classicalize(hadamard_agent()), copying_env(), 3);
  CHECK(rep.holds);
  CHECK(rep.max_trace_distance < 1e-10);
}

TEST_CASE("classicalizing an already classical actor changes nothing") {
  auto a = coin_agent();
  auto e = flip_env();
  auto ca = classicalize(a);
  for (std::size_t moves : {std::size_t{2}, std::size_t{4}}) {
    auto h1 = run_tested_interaction(a, e, Tester::classical(), moves);
    auto h2 = run_tested_interaction(ca, e, Tester::classical(), moves);
    CHECK(trace_distance(h1.rho, h2.rho) < 1e-10);
  }
}

TEST_CASE("the classical equivalent reproduces a classically interacting pair") {
  auto agent = classicalize(hadamard_agent());
  auto env = flip_env();
  for (std::size_t untested : {std::size_t{0}, std::size_t{1}}) {
    Tester tester = untested == 0 ? Tester::classical() : Tester::sporadic(untested);
    auto eq = build_classical_equivalent(agent, env, tester, 3);
    auto orig = run_tested_interaction(agent, env, tester, 3);
    auto repl = run_tested_interaction(eq.first, eq.second, tester, 3);
    CHECK(trace_distance(orig.rho, repl.rho) < 1e-10);
  }
}

TEST_CASE("any pair has a classical model under the classical tester") {
  auto agent = hadamard_agent();
  auto env = copying_env();
  auto eq = build_classical_equivalent(agent, env, Tester::classical(), 3);
  auto orig = run_tested_interaction(agent, env, Tester::classical(), 3);
  auto repl = run_tested_interaction(eq.first, eq.second, Tester::classical(), 3);
  CHECK(trace_distance(orig.rho, repl.rho) < 1e-10);
}

TEST_CASE("a quantum pair under a quantum tester has no classical model") {
  CHECK_THROWS(build_classical_equivalent(hadamard_agent(), copying_env(), Tester::sporadic(4), 3));
}

TEST_CASE("the recorded history is diagonal for any actor pair") {
  auto hist = run_tested_interaction(hadamard_agent(), copying_env(), Tester::classical(), 3);
  for (std::size_t i = 0; i < hist.rho.dim(); ++i) {
    for (std::size_t j = 0; j < hist.rho.dim(); ++j) {
      if (i != j) CHECK(std::abs(hist.rho.at(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("zero untested moves is the same as continuous testing") {
  for (auto make_agent : {&hadamard_agent, &coin_agent}) {
    auto h1 = run_tested_interaction(make_agent(), flip_env(), Tester::sporadic(0), 3);
    auto h2 = run_tested_interaction(make_agent(), flip_env(), Tester::classical(), 3);
    CHECK(trace_distance(h1.rho, h2.rho) < 1e-12);
  }
}

TEST_CASE("tester choice is invisible to classical traffic") {
  std::vector<cplx> H = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  std::vector<std::vector<std::vector<cplx>>> per_move(
      1, std::vector<std::vector<cplx>>{H, {0.0, 1.0, 1.0, 0.0}});
  Tester odd = Tester::custom(per_move);
  auto h1 = run_tested_interaction(coin_agent(), flip_env(), odd, 4);
  auto h2 = run_tested_interaction(coin_agent(), flip_env(), Tester::classical(), 4);
  REQUIRE(h1.reduced_ace.size() == h2.reduced_ace.size());
  for (std::size_t m = 0; m < h1.reduced_ace.size(); ++m) {
    CHECK(trace_distance(h1.reduced_ace[m], h2.reduced_ace[m]) < 1e-10);
  }
}

TEST_CASE("an untested interaction keeps coherent advantage intact") {
  auto hist = run_tested_interaction(hadamard_agent(), identity_env(), Tester::sporadic(2), 2);
  // Env passes eps, agent emits the superposition; nothing recorded yet.
  CHECK(hist.tested_moves == 0);
  auto& ace = hist.reduced_ace.back();
  // Communication register is in a pure superposition: coherences survive.
  bool coherent = false;
  for (std::size_t i = 0; i < ace.dim(); ++i) {
    for (std::size_t j = 0; j < ace.dim(); ++j) {
      if (i != j && std::abs(ace.at(i, j)) > 0.4) coherent = true;
    }
  }
  CHECK(coherent);
}
