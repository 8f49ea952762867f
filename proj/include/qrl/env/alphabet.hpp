#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrl {

// Action/percept symbol sets. Index 0 is the empty symbol "eps" in both sets;
// everything downstream works with indices, the names exist for fixtures and
// reports.
class Alphabet {
 public:
  Alphabet(std::size_t num_actions, std::size_t num_percepts) {
    if (num_actions < 2) throw std::invalid_argument("alphabet needs at least 2 actions");
    if (num_percepts < 1) throw std::invalid_argument("alphabet needs at least 1 percept");
    actions_.push_back("eps");
    for (std::size_t i = 1; i < num_actions; ++i) actions_.push_back("a" + std::to_string(i));
    percepts_.push_back("eps");
    for (std::size_t i = 1; i < num_percepts; ++i) percepts_.push_back("s" + std::to_string(i));
  }

  Alphabet(std::vector<std::string> actions, std::vector<std::string> percepts)
      : actions_(std::move(actions)), percepts_(std::move(percepts)) {
    validate(actions_);
    validate(percepts_);
  }

  std::size_t num_actions() const { return actions_.size(); }
  std::size_t num_percepts() const { return percepts_.size(); }
  const std::string& action_name(std::size_t i) const { return actions_.at(i); }
  const std::string& percept_name(std::size_t i) const { return percepts_.at(i); }

  static constexpr std::size_t kEpsilon = 0;

 private:
  static void validate(const std::vector<std::string>& symbols) {
    if (symbols.empty() || symbols[0] != "eps") {
      throw std::invalid_argument("alphabet must contain eps at index 0");
    }
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      for (std::size_t j = i + 1; j < symbols.size(); ++j) {
        if (symbols[i] == symbols[j]) throw std::invalid_argument("duplicate symbol");
      }
    }
  }

  std::vector<std::string> actions_;
  std::vector<std::string> percepts_;
};

// Percept index paired with its reward status.
struct RewardedPercept {
  std::size_t percept = Alphabet::kEpsilon;
  int reward = 0;

  bool operator==(const RewardedPercept&) const = default;
};

}  // namespace qrl
