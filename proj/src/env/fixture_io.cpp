#include "qrl/env/fixture_io.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qrl {

using nlohmann::json;

std::string to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::single_win: return "single_win";
    case FixtureKind::multi_reward: return "multi_reward";
    case FixtureKind::stochastic: return "stochastic";
    case FixtureKind::invasion_game: return "invasion_game";
  }
  throw std::logic_error("unknown fixture kind");
}

FixtureKind fixture_kind_from_string(const std::string& s) {
  if (s == "single_win") return FixtureKind::single_win;
  if (s == "multi_reward") return FixtureKind::multi_reward;
  if (s == "stochastic") return FixtureKind::stochastic;
  if (s == "invasion_game") return FixtureKind::invasion_game;
  throw std::invalid_argument("unknown fixture kind: " + s);
}

namespace {

std::size_t pow_sz(std::size_t base, std::size_t exp) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) v *= base;
  return v;
}

}  // namespace

void EnvFixture::validate() const {
  if (n < 2) throw std::invalid_argument("fixture: need at least 2 actions");
  if (M < 1) throw std::invalid_argument("fixture: epoch length must be >= 1");
  if (num_percepts < 1) throw std::invalid_argument("fixture: need at least 1 percept");
  if (percept_rule != "epsilon" && percept_rule != "table") {
    throw std::invalid_argument("fixture: unknown percept rule " + percept_rule);
  }
  if (percept_rule == "table") {
    if (percept_table.size() != M) throw std::invalid_argument("fixture: percept table depth != M");
    for (std::size_t d = 0; d < M; ++d) {
      if (percept_table[d].size() != pow_sz(n, d + 1)) {
        throw std::invalid_argument("fixture: percept table row size mismatch");
      }
      for (auto s : percept_table[d]) {
        if (s >= num_percepts) throw std::invalid_argument("fixture: percept index out of range");
      }
    }
  }
  switch (kind) {
    case FixtureKind::single_win: {
      if (winner.size() != M) throw std::invalid_argument("fixture: winner length != M");
      for (auto a : winner) {
        if (a >= n) throw std::invalid_argument("fixture: winner action out of range");
      }
      break;
    }
    case FixtureKind::multi_reward: {
      if (step_reward.size() != M) throw std::invalid_argument("fixture: reward table depth != M");
      for (std::size_t d = 0; d < M; ++d) {
        if (step_reward[d].size() != pow_sz(n, d + 1)) {
          throw std::invalid_argument("fixture: reward table row size mismatch");
        }
        for (int r : step_reward[d]) {
          if (r < 0 || r > lambda_max) {
            throw std::invalid_argument("fixture: step reward outside [0, lambda_max]");
          }
        }
      }
      break;
    }
    case FixtureKind::stochastic: {
      if (reward_prob.size() != pow_sz(n, M)) {
        throw std::invalid_argument("fixture: reward_prob size != n^M");
      }
      for (double p : reward_prob) {
        if (!(p >= 0.0 && p <= 1.0)) {
          throw std::invalid_argument("fixture: reward probability outside [0,1]");
        }
      }
      break;
    }
    case FixtureKind::invasion_game: {
      if (num_percepts < 2) {
        throw std::invalid_argument("fixture: invasion game needs non-eps percepts");
      }
      if (correct_action.size() != num_percepts - 1) {
        throw std::invalid_argument("fixture: need one correct action per non-eps percept");
      }
      for (auto a : correct_action) {
        if (a >= n) throw std::invalid_argument("fixture: correct action out of range");
      }
      break;
    }
  }
}

EpochalDeterministicEnv EnvFixture::build_deterministic() const {
  validate();
  Alphabet alphabet(n, num_percepts);
  EpochalDeterministicEnv::PerceptFn percept;
  if (percept_rule == "epsilon") {
    percept = [](const std::vector<std::size_t>&) { return Alphabet::kEpsilon; };
  } else {
    auto table = percept_table;
    std::size_t base = n;
    percept = [table, base](const std::vector<std::size_t>& prefix) {
      std::size_t idx = 0;
      for (auto a : prefix) idx = idx * base + a;
      return table[prefix.size() - 1][idx];
    };
  }
  if (kind == FixtureKind::single_win) {
    std::size_t m = M;
    auto w = winner;
    EpochalDeterministicEnv::RewardFn reward =
        [w, m](const std::vector<std::size_t>& prefix) {
          return (prefix.size() == m && prefix == w) ? 1 : 0;
        };
    return EpochalDeterministicEnv(std::move(alphabet), M, std::move(percept), std::move(reward),
                                   1);
  }
  if (kind == FixtureKind::multi_reward) {
    auto table = step_reward;
    std::size_t base = n;
    EpochalDeterministicEnv::RewardFn reward =
        [table, base](const std::vector<std::size_t>& prefix) {
          std::size_t idx = 0;
          for (auto a : prefix) idx = idx * base + a;
          return table[prefix.size() - 1][idx];
        };
    return EpochalDeterministicEnv(std::move(alphabet), M, std::move(percept), std::move(reward),
                                   lambda_max);
  }
  throw std::invalid_argument("fixture kind has no deterministic environment");
}

StochasticEpochalEnv EnvFixture::build_stochastic() const {
  validate();
  Alphabet alphabet(n, num_percepts);
  if (kind == FixtureKind::stochastic) {
    return StochasticEpochalEnv(std::move(alphabet), M, reward_prob);
  }
  if (kind == FixtureKind::invasion_game) {
    // Uniform over the non-eps percepts; eps itself never occurs.
    std::vector<double> dist(num_percepts, 0.0);
    for (std::size_t s = 1; s < num_percepts; ++s) {
      dist[s] = 1.0 / static_cast<double>(num_percepts - 1);
    }
    auto correct = correct_action;
    StochasticEpochalEnv::JointRewardFn joint =
        [correct](const std::vector<std::size_t>& s_seq, const std::vector<std::size_t>& a_seq) {
          for (std::size_t i = 0; i < s_seq.size(); ++i) {
            if (s_seq[i] == Alphabet::kEpsilon || a_seq[i] != correct[s_seq[i] - 1]) return 0;
          }
          return 1;
        };
    return StochasticEpochalEnv(std::move(alphabet), M, std::move(dist), std::move(joint));
  }
  throw std::invalid_argument("fixture kind has no stochastic environment");
}

double EnvFixture::gamma_squared() const {
  if (kind != FixtureKind::invasion_game) {
    throw std::invalid_argument("gamma_squared is defined for the invasion game kind");
  }
  validate();
  // Each step contributes a factor 1/n: the uniform action register overlaps
  // the single correct action per percept with amplitude 1/sqrt(n).
  return 1.0 / static_cast<double>(pow_sz(n, M));
}

std::string EnvFixture::to_json() const {
  json j;
  j["kind"] = to_string(kind);
  j["n"] = n;
  j["M"] = M;
  j["num_percepts"] = num_percepts;
  j["percept_rule"] = percept_rule;
  j["lambda_max"] = lambda_max;
  switch (kind) {
    case FixtureKind::single_win: j["winner_sequence"] = winner; break;
    case FixtureKind::multi_reward: j["step_reward_table"] = step_reward; break;
    case FixtureKind::stochastic: j["reward_prob_table"] = reward_prob; break;
    case FixtureKind::invasion_game: j["correct_action"] = correct_action; break;
  }
  if (percept_rule == "table") j["percept_table"] = percept_table;
  return j.dump(2);
}

EnvFixture EnvFixture::from_json(const std::string& text) {
  json j = json::parse(text);
  EnvFixture f;
  f.kind = fixture_kind_from_string(j.at("kind").get<std::string>());
  f.n = j.at("n").get<std::size_t>();
  f.M = j.at("M").get<std::size_t>();
  f.num_percepts = j.value("num_percepts", std::size_t{1});
  f.percept_rule = j.value("percept_rule", std::string("epsilon"));
  f.lambda_max = j.value("lambda_max", 1);
  if (j.contains("winner_sequence")) f.winner = j["winner_sequence"].get<std::vector<std::size_t>>();
  if (j.contains("step_reward_table")) {
    f.step_reward = j["step_reward_table"].get<std::vector<std::vector<int>>>();
  }
  if (j.contains("reward_prob_table")) {
    f.reward_prob = j["reward_prob_table"].get<std::vector<double>>();
  }
  if (j.contains("correct_action")) {
    f.correct_action = j["correct_action"].get<std::vector<std::size_t>>();
  }
  if (j.contains("percept_table")) {
    f.percept_table = j["percept_table"].get<std::vector<std::vector<std::size_t>>>();
  }
  f.validate();
  return f;
}

std::uint64_t EnvFixture::fingerprint() const {
  std::string dump = to_json();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string history_to_json(const History& h) {
  if (!h.well_formed()) throw std::invalid_argument("history_to_json: malformed history");
  json arr = json::array();
  for (std::size_t t = 0; t < h.steps(); ++t) {
    json e;
    e["action"] = h.actions[t];
    e["percept"] = h.percepts[t + 1].percept;
    e["reward"] = h.percepts[t + 1].reward;
    arr.push_back(e);
  }
  return arr.dump(2);
}

History history_from_json(const std::string& text) {
  json arr = json::parse(text);
  History h;
  for (const auto& e : arr) {
    h.record(e.at("action").get<std::size_t>(),
             RewardedPercept{e.at("percept").get<std::size_t>(), e.at("reward").get<int>()});
  }
  return h;
}

}  // namespace qrl
