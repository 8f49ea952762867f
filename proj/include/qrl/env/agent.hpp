#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qrl/core/rng.hpp"
#include "qrl/env/alphabet.hpp"

namespace qrl {

// Classical learning model interface. Implementations are stateful and
// single-threaded; the harness parallelizes by constructing independent
// instances.
class Agent {
 public:
  virtual ~Agent() = default;
  // Choose the next action given the latest percept.
  virtual std::size_t act(const RewardedPercept& percept, Rng& rng) = 0;
  // Called with every percept response (rewarded or not).
  virtual void learn(const RewardedPercept& percept) = 0;
  // Back to the initial configuration.
  virtual void reset() = 0;
  virtual std::unique_ptr<Agent> clone() const = 0;
};

using AgentFactory = std::function<std::unique_ptr<Agent>()>;

// The reference learning model: once a rewarded epoch has been observed, the
// agent replays its action sequence with probability epsilon and explores with
// probability 1-epsilon. Exploration is uniform without replacement over the
// sequences not yet tried.
class EpsilonGreedyAgent : public Agent {
 public:
  EpsilonGreedyAgent(double epsilon, std::size_t num_actions, std::size_t epoch_length);

  std::size_t act(const RewardedPercept& percept, Rng& rng) override;
  void learn(const RewardedPercept& percept) override;
  void reset() override;
  std::unique_ptr<Agent> clone() const override;

  const std::optional<std::vector<std::size_t>>& winner() const { return winner_; }
  bool exploited_last_epoch() const { return exploiting_; }

 private:
  void plan_epoch(Rng& rng);
  std::size_t sequence_index(const std::vector<std::size_t>& seq) const;

  double epsilon_;
  std::size_t n_;
  std::size_t M_;
  std::size_t num_sequences_;

  std::optional<std::vector<std::size_t>> winner_;
  std::vector<bool> tried_;
  std::size_t untried_count_;
  std::vector<std::size_t> plan_;
  std::size_t pos_ = 0;  // position within the current epoch
  bool exploiting_ = false;
};

}  // namespace qrl
