#include "qrl/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qrl/core/constants.hpp"

namespace qrl {

void ExperimentConfig::validate() const {
  static const char* kinds[] = {"search", "learn-compare", "stochastic-search", "lemma-verify",
                                "structural-pair"};
  bool known = false;
  for (const char* kd : kinds) known = known || kind == kd;
  if (!known) throw std::invalid_argument("unknown experiment kind: " + kind);
  if (n < 2) throw std::invalid_argument("need at least 2 actions");
  if (M < 1) throw std::invalid_argument("epoch length must be >= 1");
  if (trials < 1) throw std::invalid_argument("need at least 1 trial");
  double dims = std::pow(static_cast<double>(n), static_cast<double>(M));
  if (dims > static_cast<double>(kDenseDimCap)) {
    throw std::invalid_argument("n^M exceeds the dense simulation cap");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon outside [0,1]");
  if (!(p_min > 0.0 && p_min < 1.0)) throw std::invalid_argument("p_min outside (0,1)");
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["n"] = n;
  j["M"] = M;
  j["epsilon"] = epsilon;
  j["k"] = k;
  j["trials"] = trials;
  j["seed"] = seed;
  j["T_eval"] = T_eval;
  j["bits"] = bits;
  j["p_min"] = p_min;
  j["p_hi"] = p_hi;
  j["p_lo"] = p_lo;
  j["num_hi"] = num_hi;
  j["fixture_path"] = fixture_path;
  j["out_dir"] = out_dir;
  return j.dump(2);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_toml_config(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos && line.find('"') == std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto as_string = [&]() {
      if (val.size() >= 2 && val.front() == '"' && val.back() == '"') {
        return val.substr(1, val.size() - 2);
      }
      return val;
    };
    auto as_size = [&]() { return static_cast<std::size_t>(std::stoull(val)); };
    auto as_double = [&]() { return std::stod(val); };
    if (key == "kind") cfg.kind = as_string();
    else if (key == "n") cfg.n = as_size();
    else if (key == "M") cfg.M = as_size();
    else if (key == "epsilon") cfg.epsilon = as_double();
    else if (key == "k") cfg.k = as_size();
    else if (key == "trials") cfg.trials = as_size();
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(val));
    else if (key == "T_eval") cfg.T_eval = as_size();
    else if (key == "bits") cfg.bits = as_size();
    else if (key == "p_min") cfg.p_min = as_double();
    else if (key == "p_hi") cfg.p_hi = as_double();
    else if (key == "p_lo") cfg.p_lo = as_double();
    else if (key == "num_hi") cfg.num_hi = as_size();
    else if (key == "fixture_path") cfg.fixture_path = as_string();
    else if (key == "out_dir") cfg.out_dir = as_string();
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key " + key);
  }
}

void apply_toml_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_toml_config(cfg, ss.str());
}

}  // namespace qrl
