#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "qrl/core/rng.hpp"
#include "qrl/env/alphabet.hpp"
#include "qrl/env/history.hpp"

namespace qrl {

// Deterministic strictly epochal environment: percepts and rewards depend only
// on the actions of the current epoch, and the epoch buffer resets after
// exactly M actions.
class EpochalDeterministicEnv {
 public:
  // percept_fn(prefix) -> percept index, reward_fn(prefix) -> per-step reward;
  // prefix holds the actions of the current epoch including the current one.
  using PerceptFn = std::function<std::size_t(const std::vector<std::size_t>&)>;
  using RewardFn = std::function<int(const std::vector<std::size_t>&)>;

  EpochalDeterministicEnv(Alphabet alphabet, std::size_t epoch_length, PerceptFn percept_fn,
                          RewardFn reward_fn, int lambda_max);

  // Single winning sequence, reward 1 on its last step, all percepts eps.
  static EpochalDeterministicEnv single_win(std::size_t num_actions, std::size_t epoch_length,
                                            std::vector<std::size_t> winner);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t epoch_length() const { return M_; }
  int lambda_max() const { return lambda_max_; }
  std::size_t num_actions() const { return alphabet_.num_actions(); }
  std::size_t num_sequences() const;  // n^M

  RewardedPercept step(std::size_t action);
  void reset_epoch() { buffer_.clear(); }
  const std::vector<std::size_t>& epoch_buffer() const { return buffer_; }

  // Brute-force evaluation on a full epoch sequence (does not touch state).
  std::vector<RewardedPercept> respond(const std::vector<std::size_t>& sequence) const;
  int total_reward(const std::vector<std::size_t>& sequence) const;
  // Final-step reward status of the sequence (the single-win Lambda).
  int epoch_reward(const std::vector<std::size_t>& sequence) const;

  std::vector<std::size_t> sequence_from_index(std::size_t index) const;
  std::size_t sequence_index(const std::vector<std::size_t>& sequence) const;

  EpochalDeterministicEnv fresh_copy() const;

 private:
  Alphabet alphabet_;
  std::size_t M_;
  PerceptFn percept_fn_;
  RewardFn reward_fn_;
  int lambda_max_;
  std::vector<std::size_t> buffer_;
};

// Stochastic strictly epochal environment: reward probability per action
// sequence, optionally with an action-independent per-step percept
// distribution and a joint reward rule (the structural-dependence case).
class StochasticEpochalEnv {
 public:
  // lambda(s_sequence, a_sequence) -> 0/1 reward of the epoch.
  using JointRewardFn =
      std::function<int(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>;

  // Plain flavor: reward probability table indexed by sequence index.
  StochasticEpochalEnv(Alphabet alphabet, std::size_t epoch_length,
                       std::vector<double> reward_prob);
  // Structural flavor: percepts drawn iid from percept_dist each step,
  // reward decided by the joint rule at epoch end.
  StochasticEpochalEnv(Alphabet alphabet, std::size_t epoch_length,
                       std::vector<double> percept_dist, JointRewardFn joint_reward);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t epoch_length() const { return M_; }
  std::size_t num_actions() const { return alphabet_.num_actions(); }
  std::size_t num_sequences() const;

  bool has_percept_distribution() const { return !percept_dist_.empty(); }
  const std::vector<double>& percept_dist() const { return percept_dist_; }
  int joint_reward(const std::vector<std::size_t>& s_seq,
                   const std::vector<std::size_t>& a_seq) const;

  // Marginal reward probability of an action sequence.
  double reward_prob(std::size_t sequence_index) const;
  double theta(std::size_t sequence_index) const;  // arcsin(sqrt(p_r))

  // Classical sampling: play one epoch, return the realized percept sequence
  // and the epoch reward.
  std::pair<std::vector<std::size_t>, int> play_epoch(const std::vector<std::size_t>& sequence,
                                                      Rng& rng) const;
  // Monte-Carlo estimate of reward_prob for verification paths.
  double estimate_reward_prob(std::size_t sequence_index, std::size_t epochs, Rng& rng) const;

  std::vector<std::size_t> sequence_from_index(std::size_t index) const;

 private:
  Alphabet alphabet_;
  std::size_t M_;
  std::vector<double> reward_prob_;
  std::vector<double> percept_dist_;
  JointRewardFn joint_reward_;
};

}  // namespace qrl
