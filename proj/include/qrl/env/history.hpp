#pragma once

#include <cstddef>
#include <vector>

#include "qrl/env/alphabet.hpp"

namespace qrl {

// Alternating percept/action record. percepts[0] is the empty percept that
// opens every interaction; percepts[i+1] is the response to actions[i], so a
// t-step history holds t actions and t+1 percepts.
struct History {
  std::vector<RewardedPercept> percepts{RewardedPercept{}};
  std::vector<std::size_t> actions;

  std::size_t steps() const { return actions.size(); }

  void record(std::size_t action, RewardedPercept response) {
    actions.push_back(action);
    percepts.push_back(response);
  }

  bool well_formed() const {
    return !percepts.empty() && percepts.front() == RewardedPercept{} &&
           percepts.size() == actions.size() + 1;
  }

  int total_reward() const {
    int r = 0;
    for (const auto& p : percepts) r += p.reward;
    return r;
  }

  // String-wise concatenation (drops the redundant leading eps of the tail).
  History concat(const History& tail) const {
    History out = *this;
    out.actions.insert(out.actions.end(), tail.actions.begin(), tail.actions.end());
    out.percepts.insert(out.percepts.end(), tail.percepts.begin() + 1, tail.percepts.end());
    return out;
  }

  bool operator==(const History&) const = default;
};

// Figure of merit: per-completed-epoch reward frequency over the first
// `horizon` steps (0 = whole history). Partial epochs at the end are ignored.
struct MeritFunction {
  std::size_t epoch_length = 1;
  std::size_t horizon = 0;

  double operator()(const History& h) const;
};

double rate(const History& h, std::size_t epoch_length);

}  // namespace qrl
