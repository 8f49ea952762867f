#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qrl/harness/acceptance.hpp"
#include "qrl/harness/experiments.hpp"

namespace {

// Shared experiment flags. A --config TOML file is applied first; flags the
// user passed on the command line win.
struct CliOptions {
  qrl::ExperimentConfig cfg;
  std::string config_file;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_file, "TOML config file (CLI flags override it)");
  cmd->add_option("-n,--actions", opt.cfg.n, "actions per step");
  cmd->add_option("-M,--epoch-length", opt.cfg.M, "actions per epoch");
  cmd->add_option("--epsilon", opt.cfg.epsilon, "exploitation probability of the learning model");
  cmd->add_option("-k,--search-budget-factor", opt.cfg.k,
                  "query budget factor (budget = k sqrt(n^M); 0 = module default)");
  cmd->add_option("--trials", opt.cfg.trials, "Monte-Carlo trials");
  cmd->add_option("--seed", opt.cfg.seed, "root RNG seed");
  cmd->add_option("--T-eval", opt.cfg.T_eval, "evaluation horizon in steps (0 = default)");
  cmd->add_option("--bits", opt.cfg.bits, "phase estimator precision");
  cmd->add_option("--p-min", opt.cfg.p_min, "reward probability threshold");
  cmd->add_option("--p-hi", opt.cfg.p_hi, "generated fixture: high reward probability");
  cmd->add_option("--p-lo", opt.cfg.p_lo, "generated fixture: low reward probability");
  cmd->add_option("--num-hi", opt.cfg.num_hi, "generated fixture: number of high sequences");
  cmd->add_option("--fixture", opt.cfg.fixture_path, "environment fixture JSON to load");
  cmd->add_option("--out-dir", opt.cfg.out_dir, "report output directory");
}

// Re-applies precedence: defaults < config file < explicit CLI flags.
qrl::ExperimentConfig resolve(const CLI::App* cmd, const CliOptions& opt) {
  qrl::ExperimentConfig cfg;
  if (!opt.config_file.empty()) qrl::apply_toml_file(cfg, opt.config_file);
  auto take = [&](const std::string& flag, auto member) {
    const CLI::Option* o = cmd->get_option(flag);
    if (o && o->count() > 0) cfg.*member = opt.cfg.*member;
  };
  take("--actions", &qrl::ExperimentConfig::n);
  take("--epoch-length", &qrl::ExperimentConfig::M);
  take("--epsilon", &qrl::ExperimentConfig::epsilon);
  take("--search-budget-factor", &qrl::ExperimentConfig::k);
  take("--trials", &qrl::ExperimentConfig::trials);
  take("--seed", &qrl::ExperimentConfig::seed);
  take("--T-eval", &qrl::ExperimentConfig::T_eval);
  take("--bits", &qrl::ExperimentConfig::bits);
  take("--p-min", &qrl::ExperimentConfig::p_min);
  take("--p-hi", &qrl::ExperimentConfig::p_hi);
  take("--p-lo", &qrl::ExperimentConfig::p_lo);
  take("--num-hi", &qrl::ExperimentConfig::num_hi);
  take("--fixture", &qrl::ExperimentConfig::fixture_path);
  take("--out-dir", &qrl::ExperimentConfig::out_dir);
  return cfg;
}

int run_kind(const std::string& kind, const CLI::App* cmd, const CliOptions& opt) {
  qrl::ExperimentConfig cfg = resolve(cmd, opt);
  cfg.kind = kind;
  cfg.validate();
  auto rep = qrl::run_experiment(cfg);
  qrl::write_report(rep);
  std::cout << "wrote " << (std::filesystem::path(cfg.out_dir) / rep.name).string()
            << ".{json,csv}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale simulator for oracle-driven reinforcement learning experiments"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string fixture_kind = "single_win";
  std::string fixture_out = "fixture.json";
  std::uint64_t accept_seed = 1;
  std::string accept_out = "acceptance_out";

  auto* fixture = app.add_subcommand("fixture", "generate an environment fixture JSON");
  add_common_options(fixture, opt);
  fixture->add_option("--kind", fixture_kind,
                      "single_win | multi_reward | stochastic | invasion_game");
  fixture->add_option("--out", fixture_out, "output file path");

  const char* kinds[] = {"search", "learn-compare", "stochastic-search", "structural-pair",
                         "lemma-verify"};
  const char* descs[] = {
      "randomized amplitude-amplified search for the winning sequence",
      "quantum-enhanced agent vs its classical learning model",
      "threshold amplification over stochastic reward probabilities",
      "rewarded (action, percept) pair sampling for joint reward rules",
      "tested-interaction lemma checks on the built-in corpus"};
  std::vector<CLI::App*> cmds;
  for (int i = 0; i < 5; ++i) {
    auto* c = app.add_subcommand(kinds[i], descs[i]);
    add_common_options(c, opt);
    cmds.push_back(c);
  }

  auto* accept = app.add_subcommand("accept", "run the full acceptance suite");
  accept->add_option("--seed", accept_seed, "root RNG seed");
  accept->add_option("--out-dir", accept_out, "report output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixture->parsed()) {
      qrl::ExperimentConfig cfg = resolve(fixture, opt);
      cfg.validate();
      qrl::Rng rng(cfg.seed);
      auto fx = qrl::generate_fixture(qrl::fixture_kind_from_string(fixture_kind), cfg, rng);
      std::ofstream out(fixture_out, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot write " + fixture_out);
      out << fx.to_json() << '\n';
      std::cout << "wrote " << fixture_out << " (fingerprint " << fx.fingerprint() << ")\n";
      return 0;
    }
    for (int i = 0; i < 5; ++i) {
      if (cmds[i]->parsed()) return run_kind(kinds[i], cmds[i], opt);
    }
    if (accept->parsed()) {
      return qrl::run_acceptance(accept_seed, accept_out, std::cout);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
