#include "qrl/env/environment.hpp"

#include <cmath>
#include <stdexcept>

#include "qrl/core/constants.hpp"

namespace qrl {

EpochalDeterministicEnv::EpochalDeterministicEnv(Alphabet alphabet, std::size_t epoch_length,
                                                 PerceptFn percept_fn, RewardFn reward_fn,
                                                 int lambda_max)
    : alphabet_(std::move(alphabet)),
      M_(epoch_length),
      percept_fn_(std::move(percept_fn)),
      reward_fn_(std::move(reward_fn)),
      lambda_max_(lambda_max) {
  if (M_ < 1) throw std::invalid_argument("epoch length must be >= 1");
  if (lambda_max_ < 0) throw std::invalid_argument("lambda_max must be >= 0");
}

EpochalDeterministicEnv EpochalDeterministicEnv::single_win(std::size_t num_actions,
                                                            std::size_t epoch_length,
                                                            std::vector<std::size_t> winner) {
  if (winner.size() != epoch_length) throw std::invalid_argument("winner length != M");
  auto percept = [](const std::vector<std::size_t>&) { return Alphabet::kEpsilon; };
  std::size_t m = epoch_length;
  auto reward = [winner = std::move(winner), m](const std::vector<std::size_t>& prefix) {
    return (prefix.size() == m && prefix == winner) ? 1 : 0;
  };
  return EpochalDeterministicEnv(Alphabet(num_actions, 1), epoch_length, percept, reward, 1);
}

std::size_t EpochalDeterministicEnv::num_sequences() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < M_; ++i) n *= num_actions();
  return n;
}

RewardedPercept EpochalDeterministicEnv::step(std::size_t action) {
  if (action >= num_actions()) throw std::invalid_argument("action out of range");
  buffer_.push_back(action);
  RewardedPercept out{percept_fn_(buffer_), reward_fn_(buffer_)};
  if (out.reward > lambda_max_) throw std::logic_error("reward exceeds declared lambda_max");
  if (buffer_.size() == M_) buffer_.clear();
  return out;
}

std::vector<RewardedPercept> EpochalDeterministicEnv::respond(
    const std::vector<std::size_t>& sequence) const {
  if (sequence.size() != M_) throw std::invalid_argument("respond: sequence length != M");
  std::vector<RewardedPercept> out;
  std::vector<std::size_t> prefix;
  for (auto a : sequence) {
    prefix.push_back(a);
    out.push_back(RewardedPercept{percept_fn_(prefix), reward_fn_(prefix)});
  }
  return out;
}

int EpochalDeterministicEnv::total_reward(const std::vector<std::size_t>& sequence) const {
  int total = 0;
  for (const auto& p : respond(sequence)) total += p.reward;
  return total;
}

int EpochalDeterministicEnv::epoch_reward(const std::vector<std::size_t>& sequence) const {
  return respond(sequence).back().reward;
}

std::vector<std::size_t> EpochalDeterministicEnv::sequence_from_index(std::size_t index) const {
  std::vector<std::size_t> seq(M_);
  for (std::size_t i = M_; i-- > 0;) {
    seq[i] = index % num_actions();
    index /= num_actions();
  }
  return seq;
}

std::size_t EpochalDeterministicEnv::sequence_index(
    const std::vector<std::size_t>& sequence) const {
  std::size_t idx = 0;
  for (auto a : sequence) idx = idx * num_actions() + a;
  return idx;
}

EpochalDeterministicEnv EpochalDeterministicEnv::fresh_copy() const {
  return EpochalDeterministicEnv(alphabet_, M_, percept_fn_, reward_fn_, lambda_max_);
}

StochasticEpochalEnv::StochasticEpochalEnv(Alphabet alphabet, std::size_t epoch_length,
                                           std::vector<double> reward_prob)
    : alphabet_(std::move(alphabet)), M_(epoch_length), reward_prob_(std::move(reward_prob)) {
  if (reward_prob_.size() != num_sequences()) {
    throw std::invalid_argument("reward_prob table size != n^M");
  }
  for (double p : reward_prob_) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("reward probability outside [0,1]");
  }
}

StochasticEpochalEnv::StochasticEpochalEnv(Alphabet alphabet, std::size_t epoch_length,
                                           std::vector<double> percept_dist,
                                           JointRewardFn joint_reward)
    : alphabet_(std::move(alphabet)),
      M_(epoch_length),
      percept_dist_(std::move(percept_dist)),
      joint_reward_(std::move(joint_reward)) {
  if (percept_dist_.size() != alphabet_.num_percepts()) {
    throw std::invalid_argument("percept distribution size != |S|");
  }
  double sum = 0.0;
  for (double p : percept_dist_) {
    if (p < 0.0) throw std::invalid_argument("negative percept probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::distribution) {
    throw std::invalid_argument("percept distribution not normalized");
  }
  // Precompute the marginal reward probability per action sequence.
  std::size_t ns = num_sequences();
  std::size_t num_s = alphabet_.num_percepts();
  std::size_t s_total = 1;
  for (std::size_t i = 0; i < M_; ++i) s_total *= num_s;
  reward_prob_.assign(ns, 0.0);
  for (std::size_t ai = 0; ai < ns; ++ai) {
    auto a_seq = sequence_from_index(ai);
    double p_sum = 0.0;
    for (std::size_t si = 0; si < s_total; ++si) {
      std::vector<std::size_t> s_seq(M_);
      std::size_t rem = si;
      double p = 1.0;
      for (std::size_t i = M_; i-- > 0;) {
        s_seq[i] = rem % num_s;
        rem /= num_s;
        p *= percept_dist_[s_seq[i]];
      }
      if (p > 0.0 && joint_reward_(s_seq, a_seq) > 0) p_sum += p;
    }
    reward_prob_[ai] = p_sum;
  }
}

std::size_t StochasticEpochalEnv::num_sequences() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < M_; ++i) n *= num_actions();
  return n;
}

int StochasticEpochalEnv::joint_reward(const std::vector<std::size_t>& s_seq,
                                       const std::vector<std::size_t>& a_seq) const {
  if (!joint_reward_) throw std::logic_error("environment has no joint reward rule");
  return joint_reward_(s_seq, a_seq);
}

double StochasticEpochalEnv::reward_prob(std::size_t sequence_index) const {
  return reward_prob_.at(sequence_index);
}

double StochasticEpochalEnv::theta(std::size_t sequence_index) const {
  return std::asin(std::sqrt(reward_prob(sequence_index)));
}

std::pair<std::vector<std::size_t>, int> StochasticEpochalEnv::play_epoch(
    const std::vector<std::size_t>& sequence, Rng& rng) const {
  if (sequence.size() != M_) throw std::invalid_argument("play_epoch: sequence length != M");
  std::vector<std::size_t> s_seq(M_, Alphabet::kEpsilon);
  if (has_percept_distribution()) {
    for (std::size_t i = 0; i < M_; ++i) {
      double u = rng.uniform();
      double acc = 0.0;
      for (std::size_t s = 0; s < percept_dist_.size(); ++s) {
        acc += percept_dist_[s];
        if (u < acc) {
          s_seq[i] = s;
          break;
        }
      }
    }
    return {s_seq, joint_reward_(s_seq, sequence)};
  }
  std::size_t idx = 0;
  for (auto a : sequence) idx = idx * num_actions() + a;
  int reward = rng.bernoulli(reward_prob_.at(idx)) ? 1 : 0;
  return {s_seq, reward};
}

double StochasticEpochalEnv::estimate_reward_prob(std::size_t sequence_index, std::size_t epochs,
                                                  Rng& rng) const {
  auto seq = sequence_from_index(sequence_index);
  std::size_t wins = 0;
  for (std::size_t e = 0; e < epochs; ++e) {
    if (play_epoch(seq, rng).second > 0) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(epochs);
}

std::vector<std::size_t> StochasticEpochalEnv::sequence_from_index(std::size_t index) const {
  std::vector<std::size_t> seq(M_);
  for (std::size_t i = M_; i-- > 0;) {
    seq[i] = index % num_actions();
    index /= num_actions();
  }
  return seq;
}

}  // namespace qrl
