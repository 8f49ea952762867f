#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "qrl/harness/config.hpp"
#include "qrl/harness/experiments.hpp"
#include "qrl/qagent/quantum_agent.hpp"

using namespace qrl;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("slope fitting recovers an exact line") {
  std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> y = {0.5, 2.5, 4.5, 6.5};
  CHECK(fit_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mean_of(y) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(stderr_of(std::vector<double>{1.0, 1.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("config validation guards parameters and resources") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  ExperimentConfig bad = cfg;
  bad.kind = "unknown";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.M = 20;  // 2^20 sequences exceed the dense cap
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.epsilon = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("the config file format fills fields and rejects unknown keys") {
  ExperimentConfig cfg;
  apply_toml_config(cfg,
                    "# comment\n"
                    "kind = \"learn-compare\"\n"
                    "n = 3\n"
                    "M = 4\n"
                    "epsilon = 0.25\n"
                    "trials = 7\n"
                    "seed = 99\n"
                    "out_dir = \"runs\"\n");
  CHECK(cfg.kind == "learn-compare");
  CHECK(cfg.n == 3);
  CHECK(cfg.M == 4);
  CHECK(cfg.epsilon == doctest::Approx(0.25));
  CHECK(cfg.trials == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.out_dir == "runs");

  CHECK_THROWS_AS(apply_toml_config(cfg, "mystery = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(apply_toml_config(cfg, "just a line\n"), std::invalid_argument);
}

TEST_CASE("generated fixtures keep their promises") {
  ExperimentConfig cfg;
  cfg.n = 2;
  cfg.M = 2;
  Rng rng(5);

  auto sw = generate_fixture(FixtureKind::single_win, cfg, rng);
  auto env = sw.build_deterministic();
  int winners = 0;
  for (std::size_t a = 0; a < env.num_sequences(); ++a) {
    winners += env.epoch_reward(env.sequence_from_index(a));
  }
  CHECK(winners == 1);

  ExperimentConfig scfg;
  scfg.n = 2;
  scfg.M = 4;
  scfg.p_hi = 0.9;
  scfg.p_lo = 0.1;
  scfg.p_min = 0.5;
  scfg.num_hi = 4;
  scfg.bits = 4;
  auto st = generate_fixture(FixtureKind::stochastic, scfg, rng);
  std::size_t hi = 0;
  for (double p : st.reward_prob) {
    CHECK((p == doctest::Approx(0.9) || p == doctest::Approx(0.1)));
    if (p > 0.5) ++hi;
  }
  CHECK(hi == 4);

  ExperimentConfig icfg;
  icfg.n = 2;
  icfg.M = 1;
  auto inv = generate_fixture(FixtureKind::invasion_game, icfg, rng);
  CHECK(inv.gamma_squared() == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(default_fixture_kind("search") == FixtureKind::single_win);
  CHECK(default_fixture_kind("stochastic-search") == FixtureKind::stochastic);
  CHECK(default_fixture_kind("structural-pair") == FixtureKind::invasion_game);
}

TEST_CASE("the lemma corpus verifies end to end") {
  auto suite = run_lemma_suite();
  REQUIRE(suite.size() == 4);
  for (const auto& rep : suite) {
    INFO(rep.lemma << ": " << rep.note);
    CHECK(rep.holds);
  }
}

TEST_CASE("recording the exchange strips the amplification advantage") {
  CHECK(tested_grover_success(false) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tested_grover_success(true) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("identical configurations produce byte-identical reports") {
  auto dir = std::filesystem::temp_directory_path() / "qrl_repro_test";
  std::filesystem::remove_all(dir);

  ExperimentConfig cfg;
  cfg.kind = "search";
  cfg.n = 2;
  cfg.M = 3;
  cfg.trials = 6;
  cfg.seed = 12;

  std::string json1, csv1;
  for (int round = 0; round < 2; ++round) {
    cfg.out_dir = (dir / ("round" + std::to_string(round))).string();
    auto rep = run_experiment(cfg);
    write_report(rep);
    auto json = slurp(std::filesystem::path(cfg.out_dir) / (rep.name + ".json"));
    auto csv = slurp(std::filesystem::path(cfg.out_dir) / (rep.name + ".csv"));
    if (round == 0) {
      json1 = json;
      csv1 = csv;
    } else {
      CHECK(json == json1);
      CHECK(csv == csv1);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("search reports aggregate what the rows record") {
  ExperimentConfig cfg;
  cfg.kind = "search";
  cfg.n = 2;
  cfg.M = 3;
  cfg.trials = 10;
  cfg.seed = 3;
  auto rep = run_experiment(cfg);

  REQUIRE(rep.csv_rows.size() == cfg.trials);
  CHECK(rep.csv_header == "trial,oracle_queries,interaction_steps,found,success");

  double total = 0.0;
  for (std::size_t t = 0; t < rep.csv_rows.size(); ++t) {
    std::istringstream row(rep.csv_rows[t]);
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(cell == std::to_string(t));  // rows ordered by trial index
    std::getline(row, cell, ',');
    total += std::stod(cell);
  }
  double mean = total / static_cast<double>(cfg.trials);
  std::ostringstream key;
  key << "\"mean_queries\":";
  auto pos = rep.aggregates.find(key.str());
  REQUIRE(pos != std::string::npos);
  double reported = std::stod(rep.aggregates.substr(pos + key.str().size()));
  CHECK(reported == doctest::Approx(mean).epsilon(1e-9));
}

TEST_CASE("each experiment kind runs end to end on a small budget") {
  ExperimentConfig cfg;
  cfg.n = 2;
  cfg.M = 2;
  cfg.trials = 4;
  cfg.seed = 21;

  cfg.kind = "learn-compare";
  cfg.T_eval = 16;
  auto lc = run_experiment(cfg);
  CHECK(lc.csv_rows.size() == 4);
  CHECK(lc.csv_header == std::string("trial,") + ComparisonReport::csv_header());

  cfg.kind = "stochastic-search";
  cfg.M = 4;
  cfg.bits = 4;
  auto ss = run_experiment(cfg);
  CHECK(ss.csv_rows.size() == 4);

  cfg.kind = "structural-pair";
  cfg.M = 1;
  auto sp = run_experiment(cfg);
  CHECK(sp.csv_rows.size() == 4);
  CHECK(sp.aggregates.find("\"rewarded_given_success\": 1.0") != std::string::npos);

  cfg.kind = "lemma-verify";
  auto lv = run_experiment(cfg);
  CHECK(lv.csv_header == "lemma,holds,max_deviation");
  CHECK(lv.aggregates.find("\"all_hold\": true") != std::string::npos);
}

TEST_CASE("reports never embed wall-clock information") {
  ExperimentConfig cfg;
  cfg.kind = "lemma-verify";
  auto rep = run_experiment(cfg);
  CHECK(rep.aggregates.find("time") == std::string::npos);
  CHECK(rep.aggregates.find("date") == std::string::npos);
}
