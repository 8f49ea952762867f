#include "qrl/env/agent.hpp"

#include <stdexcept>

namespace qrl {

EpsilonGreedyAgent::EpsilonGreedyAgent(double epsilon, std::size_t num_actions,
                                       std::size_t epoch_length)
    : epsilon_(epsilon), n_(num_actions), M_(epoch_length) {
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon outside [0,1]");
  num_sequences_ = 1;
  for (std::size_t i = 0; i < M_; ++i) num_sequences_ *= n_;
  reset();
}

void EpsilonGreedyAgent::reset() {
  winner_.reset();
  tried_.assign(num_sequences_, false);
  untried_count_ = num_sequences_;
  plan_.clear();
  pos_ = 0;
  exploiting_ = false;
}

std::size_t EpsilonGreedyAgent::sequence_index(const std::vector<std::size_t>& seq) const {
  std::size_t idx = 0;
  for (auto a : seq) idx = idx * n_ + a;
  return idx;
}

void EpsilonGreedyAgent::plan_epoch(Rng& rng) {
  if (winner_ && rng.bernoulli(epsilon_)) {
    plan_ = *winner_;
    exploiting_ = true;
    return;
  }
  exploiting_ = false;
  if (untried_count_ == 0) {
    // Full sweep without a stored winner: start a fresh pass.
    tried_.assign(num_sequences_, false);
    untried_count_ = num_sequences_;
  }
  std::size_t rank = rng.uniform_int(untried_count_);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < num_sequences_; ++i) {
    if (!tried_[i]) {
      if (rank == 0) {
        idx = i;
        break;
      }
      --rank;
    }
  }
  tried_[idx] = true;
  --untried_count_;
  plan_.assign(M_, 0);
  for (std::size_t i = M_; i-- > 0;) {
    plan_[i] = idx % n_;
    idx /= n_;
  }
}

std::size_t EpsilonGreedyAgent::act(const RewardedPercept&, Rng& rng) {
  if (pos_ == 0 || pos_ >= M_) {
    plan_epoch(rng);
    pos_ = 0;
  }
  return plan_[pos_++];
}

void EpsilonGreedyAgent::learn(const RewardedPercept& percept) {
  if (percept.reward > 0 && pos_ == M_ && plan_.size() == M_) {
    winner_ = plan_;
  }
}

std::unique_ptr<Agent> EpsilonGreedyAgent::clone() const {
  return std::make_unique<EpsilonGreedyAgent>(*this);
}

}  // namespace qrl
