#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrl/env/environment.hpp"
#include "qrl/env/history.hpp"

namespace qrl {

enum class FixtureKind { single_win, multi_reward, stochastic, invasion_game };

std::string to_string(FixtureKind kind);
FixtureKind fixture_kind_from_string(const std::string& s);

// Serializable environment description. Exactly one payload family is used
// per kind:
//   single_win    -> winner
//   multi_reward  -> step_reward (per depth d: n^(d+1) entries, reward granted
//                    on the (d+1)-th action of the epoch)
//   stochastic    -> reward_prob (n^M entries)
//   invasion_game -> correct_action (one per percept, percepts drawn uniformly)
// Percepts of the deterministic kinds follow percept_rule: "epsilon" (all
// responses eps) or "table" (per-depth percept indices, like step_reward).
struct EnvFixture {
  FixtureKind kind = FixtureKind::single_win;
  std::size_t n = 2;
  std::size_t M = 1;
  std::size_t num_percepts = 1;  // including eps

  std::vector<std::size_t> winner;
  std::vector<std::vector<int>> step_reward;
  std::vector<double> reward_prob;
  std::vector<std::size_t> correct_action;

  std::string percept_rule = "epsilon";
  std::vector<std::vector<std::size_t>> percept_table;

  int lambda_max = 1;

  void validate() const;  // throws std::invalid_argument with a reason

  EpochalDeterministicEnv build_deterministic() const;
  StochasticEpochalEnv build_stochastic() const;

  // Squared overlap of the uniform strategy state with the rewarded subspace
  // purification; defined for the invasion_game kind.
  double gamma_squared() const;

  std::string to_json() const;
  static EnvFixture from_json(const std::string& text);

  // FNV-1a over the canonical JSON dump; stable across runs.
  std::uint64_t fingerprint() const;
};

std::string history_to_json(const History& h);
History history_from_json(const std::string& text);

}  // namespace qrl
