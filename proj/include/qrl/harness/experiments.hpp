#pragma once

#include <string>
#include <vector>

#include "qrl/core/rng.hpp"
#include "qrl/env/fixture_io.hpp"
#include "qrl/harness/config.hpp"

namespace qrl {

// One finished batch run. Per-trial rows are ordered by trial index
// regardless of scheduling; aggregates are recomputable from the rows.
struct RunReport {
  ExperimentConfig config;
  std::string name;  // output file stem
  std::string csv_header;
  std::vector<std::string> csv_rows;
  std::string aggregates;  // JSON object text, key-sorted
};

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

double mean_of(const std::vector<double>& v);
double stderr_of(const std::vector<double>& v);

// Random fixture of the given kind from the generator parameters in cfg.
// Promises are verified before the fixture is returned (unique winner for
// single_win, estimator-grid gap around p_min for stochastic).
EnvFixture generate_fixture(FixtureKind kind, const ExperimentConfig& cfg, Rng& rng);
FixtureKind default_fixture_kind(const std::string& experiment_kind);

struct LemmaReport {
  std::string lemma;
  bool holds = false;
  double max_deviation = 0.0;
  std::string note;
};

// Tested-interaction checks on a small fixed corpus (symbol dims <= 4,
// interactions of <= 4 moves): interaction invariance, the classical
// equivalent constructions, and dephasing of the environment.
std::vector<LemmaReport> run_lemma_suite();

// Success probability of a 4-item amplitude-amplification exchange run in the
// tested-interaction picture, with the environment move optionally dephased.
double tested_grover_success(bool classicalized_env);

RunReport run_experiment(const ExperimentConfig& cfg);

// Writes <out_dir>/<name>.json and <out_dir>/<name>.csv. Output bytes are a
// pure function of (config, seed); no timestamps are embedded.
void write_report(const RunReport& rep);

}  // namespace qrl
