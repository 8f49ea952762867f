#include "qrl/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qrl/env/interact.hpp"
#include "qrl/oracle/oracle.hpp"
#include "qrl/qagent/quantum_agent.hpp"
#include "qrl/search/phase_estimation.hpp"
#include "qrl/search/structural.hpp"
#include "qrl/search/threshold_search.hpp"
#include "qrl/tester/tester.hpp"

namespace qrl {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::size_t pow_sz(std::size_t b, std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= b;
  return v;
}

// Work pool over trial indices. Each body call owns its trial completely;
// result slots are preallocated so ordering never depends on scheduling.
void parallel_trials(std::size_t trials, const std::function<void(std::size_t)>& body) {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 4;
  std::size_t workers = std::min({trials, hw, std::size_t{16}});
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&]() {
    while (true) {
      std::size_t t = next.fetch_add(1);
      if (t >= trials) break;
      try {
        body(t);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) {
          err = std::make_exception_ptr(
              std::runtime_error("trial " + std::to_string(t) + ": " + e.what()));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::vector<std::size_t> decode_base(std::size_t index, std::size_t base, std::size_t length) {
  std::vector<std::size_t> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = index % base;
    index /= base;
  }
  return out;
}

EnvFixture load_or_generate(const ExperimentConfig& cfg, FixtureKind kind, Rng& rng) {
  if (!cfg.fixture_path.empty()) {
    std::ifstream in(cfg.fixture_path);
    if (!in) throw std::invalid_argument("cannot open fixture file " + cfg.fixture_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return EnvFixture::from_json(ss.str());
  }
  ExperimentConfig local = cfg;
  return generate_fixture(kind, local, rng);
}

}  // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two samples of equal length");
  }
  double xm = mean_of(x), ym = mean_of(y);
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - xm) * (y[i] - ym);
    var += (x[i] - xm) * (x[i] - xm);
  }
  if (var == 0.0) throw std::invalid_argument("slope fit needs spread in x");
  return cov / var;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  double var = ss / static_cast<double>(v.size() - 1);
  return std::sqrt(var / static_cast<double>(v.size()));
}

FixtureKind default_fixture_kind(const std::string& experiment_kind) {
  if (experiment_kind == "stochastic-search") return FixtureKind::stochastic;
  if (experiment_kind == "structural-pair") return FixtureKind::invasion_game;
  return FixtureKind::single_win;
}

EnvFixture generate_fixture(FixtureKind kind, const ExperimentConfig& cfg, Rng& rng) {
  cfg.validate();
  EnvFixture fx;
  fx.kind = kind;
  fx.n = cfg.n;
  fx.M = cfg.M;
  std::size_t N = pow_sz(cfg.n, cfg.M);
  switch (kind) {
    case FixtureKind::single_win: {
      fx.winner = decode_base(rng.uniform_int(N), cfg.n, cfg.M);
      break;
    }
    case FixtureKind::multi_reward: {
      // Zero rewards except on the last step: a unique maximum of 2 and one
      // runner-up of 1, so threshold search has non-trivial levels.
      fx.lambda_max = 2;
      fx.step_reward.resize(cfg.M);
      for (std::size_t d = 0; d < cfg.M; ++d) {
        fx.step_reward[d].assign(pow_sz(cfg.n, d + 1), 0);
      }
      std::size_t best = rng.uniform_int(N);
      std::size_t other = rng.uniform_int(N - 1);
      if (other >= best) ++other;
      fx.step_reward[cfg.M - 1][best] = 2;
      fx.step_reward[cfg.M - 1][other] = 1;
      break;
    }
    case FixtureKind::stochastic: {
      if (cfg.num_hi == 0 || cfg.num_hi >= N) {
        throw std::invalid_argument("stochastic fixture needs 0 < num_hi < n^M");
      }
      // The declared gap keeps every reward probability off the estimator
      // grid cell around p_min.
      double cell = std::numbers::pi / static_cast<double>(std::size_t{1} << cfg.bits);
      double t_min = std::asin(std::sqrt(cfg.p_min));
      for (double p : {cfg.p_hi, cfg.p_lo}) {
        if (std::abs(std::asin(std::sqrt(p)) - t_min) < cell) {
          throw std::invalid_argument(
              "stochastic fixture: reward probability inside the threshold grid cell");
        }
      }
      if (!(cfg.p_hi >= cfg.p_min && cfg.p_lo < cfg.p_min)) {
        throw std::invalid_argument("stochastic fixture: p_lo < p_min <= p_hi required");
      }
      fx.reward_prob.assign(N, cfg.p_lo);
      std::vector<std::size_t> order(N);
      for (std::size_t i = 0; i < N; ++i) order[i] = i;
      for (std::size_t i = 0; i < cfg.num_hi; ++i) {
        std::size_t j = i + rng.uniform_int(N - i);
        std::swap(order[i], order[j]);
        fx.reward_prob[order[i]] = cfg.p_hi;
      }
      break;
    }
    case FixtureKind::invasion_game: {
      fx.num_percepts = cfg.n + 1;
      fx.correct_action.resize(cfg.n);
      for (auto& a : fx.correct_action) a = rng.uniform_int(cfg.n);
      break;
    }
  }
  fx.validate();
  if (kind == FixtureKind::single_win) {
    // Verify the promise by brute force.
    auto env = fx.build_deterministic();
    std::size_t winners = 0;
    for (std::size_t a = 0; a < N; ++a) {
      if (env.epoch_reward(env.sequence_from_index(a)) > 0) ++winners;
    }
    if (winners != 1) throw std::invalid_argument("single-win fixture lost its unique winner");
  }
  return fx;
}

// ---------------------------------------------------------------------------
// Tested-interaction corpus

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ChannelActor classical_env_flip() {
  using T = ChannelActor::Transition;
  std::vector<std::vector<std::vector<T>>> table(1, std::vector<std::vector<T>>(2));
  table[0][0] = {T{1.0, 0, 1}};
  table[0][1] = {T{1.0, 0, 0}};
  return ChannelActor::classical_table(ActorRole::environment, 1, 2, 0, table);
}

ChannelActor classical_agent_coin() {
  using T = ChannelActor::Transition;
  std::vector<std::vector<std::vector<T>>> table(1, std::vector<std::vector<T>>(2));
  for (std::size_t y = 0; y < 2; ++y) table[0][y] = {T{0.5, 0, 0}, T{0.5, 0, 1}};
  return ChannelActor::classical_table(ActorRole::agent, 1, 2, 0, table);
}

ChannelActor hadamard_agent() {
  std::vector<cplx> H = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  return ChannelActor::unitary_actor(ActorRole::agent, 1, 2, {cplx{1.0, 0.0}}, {H});
}

ChannelActor phase_env() {
  std::vector<cplx> I2 = {1.0, 0.0, 0.0, 1.0};
  std::vector<cplx> Z = {1.0, 0.0, 0.0, -1.0};
  return ChannelActor::unitary_actor(ActorRole::environment, 1, 2, {cplx{1.0, 0.0}}, {I2, Z});
}

// First move identity, second move copies the communication qubit into the
// private qubit; the agent's coherence then leaks into the environment.
ChannelActor entangling_env() {
  std::vector<cplx> I4(16, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i) I4[i * 4 + i] = 1.0;
  std::vector<cplx> cnot(16, cplx{0.0, 0.0});
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t y = 0; y < 2; ++y) {
      cnot[((p ^ y) * 2 + y) * 4 + (p * 2 + y)] = 1.0;
    }
  }
  return ChannelActor::unitary_actor(ActorRole::environment, 2, 2,
                                     {cplx{1.0, 0.0}, cplx{0.0, 0.0}}, {I4, cnot});
}

double history_state_distance(const QuantumHistoryState& a, const QuantumHistoryState& b) {
  return trace_distance(a.rho, b.rho);
}

}  // namespace

double tested_grover_success(bool classicalized_env) {
  // 4-symbol exchange: prepare uniform, oracle phase on item 3, diffusion.
  std::vector<cplx> H4(16);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      int bits = static_cast<int>(r & c);
      int par = ((bits >> 1) ^ bits) & 1;
      H4[r * 4 + c] = par ? -0.5 : 0.5;
    }
  }
  std::vector<cplx> diffusion(16);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) diffusion[r * 4 + c] = (r == c) ? -0.5 : 0.5;
  }
  std::vector<cplx> I4(16, cplx{0.0, 0.0}), oracle(16, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i) {
    I4[i * 4 + i] = 1.0;
    oracle[i * 4 + i] = (i == 3) ? -1.0 : 1.0;
  }
  auto agent = ChannelActor::unitary_actor(ActorRole::agent, 1, 4, {cplx{1.0, 0.0}},
                                           {H4, diffusion});
  auto env = ChannelActor::unitary_actor(ActorRole::environment, 1, 4, {cplx{1.0, 0.0}},
                                         {I4, oracle});
  if (classicalized_env) env = classicalize(env);
  auto hist = run_tested_interaction(agent, env, Tester::sporadic(4), 4);
  return hist.reduced_ace.back().diagonal_prob(3);
}

std::vector<LemmaReport> run_lemma_suite() {
  std::vector<LemmaReport> out;

  {
    LemmaReport rep;
    rep.lemma = "interaction_invariance";
    auto classical = verify_classical_interaction_invariance(classical_agent_coin(),
                                                             classical_env_flip(), 4);
    auto dephased = verify_classical_interaction_invariance(classicalize(hadamard_agent()),
                                                            classicalize(phase_env()), 3);
    auto entangled =
        verify_classical_interaction_invariance(hadamard_agent(), entangling_env(), 3);
    rep.max_deviation = entangled.max_trace_distance;
    rep.holds = classical.holds && dephased.holds && !entangled.holds &&
                entangled.max_trace_distance >= 0.1;
    rep.note = "classical and dephased pairs invariant; entangling pair deviates by " +
               fmt(entangled.max_trace_distance);
    out.push_back(rep);
  }

  {
    LemmaReport rep;
    rep.lemma = "classical_interaction_equivalent";
    auto agent = classicalize(hadamard_agent());
    auto env = classical_env_flip();
    double worst = 0.0;
    for (std::size_t untested : {std::size_t{0}, std::size_t{1}}) {
      Tester tester = untested == 0 ? Tester::classical() : Tester::sporadic(untested);
      auto eq = build_classical_equivalent(agent, env, tester, 3);
      auto orig = run_tested_interaction(agent, env, tester, 3);
      auto repl = run_tested_interaction(eq.first, eq.second, tester, 3);
      worst = std::max(worst, history_state_distance(orig, repl));
    }
    rep.max_deviation = worst;
    rep.holds = worst < 1e-10;
    rep.note = "classical pair reproduces the tested history state";
    out.push_back(rep);
  }

  {
    LemmaReport rep;
    rep.lemma = "classical_tester_equivalent";
    auto agent = hadamard_agent();
    auto env = entangling_env();
    auto eq = build_classical_equivalent(agent, env, Tester::classical(), 3);
    auto orig = run_tested_interaction(agent, env, Tester::classical(), 3);
    auto repl = run_tested_interaction(eq.first, eq.second, Tester::classical(), 3);
    rep.max_deviation = history_state_distance(orig, repl);
    rep.holds = rep.max_deviation < 1e-10;
    rep.note = "quantum pair under a classical tester has a classical model";
    out.push_back(rep);
  }

  {
    LemmaReport rep;
    rep.lemma = "classicalization";
    auto inv = verify_classical_interaction_invariance(classicalize(hadamard_agent()),
                                                       classicalize(entangling_env()), 3);
    double pq = tested_grover_success(false);
    double pc = tested_grover_success(true);
    rep.max_deviation = std::max(std::abs(pq - 1.0), std::abs(pc - 0.25));
    rep.holds = inv.holds && std::abs(pq - 1.0) < 1e-10 && std::abs(pc - 0.25) < 1e-10;
    rep.note = "dephasing restores invariance and drops amplification to uniform sampling";
    out.push_back(rep);
  }

  return out;
}

// ---------------------------------------------------------------------------
// Batch runners

namespace {

RunReport run_search(const ExperimentConfig& cfg) {
  Rng root(cfg.seed);
  Rng gen = root.child(0);
  EnvFixture fx = load_or_generate(cfg, default_fixture_kind(cfg.kind), gen);
  auto env = fx.build_deterministic();
  std::size_t N = env.num_sequences();
  std::size_t budget =
      cfg.k == 0 ? 0
                 : static_cast<std::size_t>(
                       std::ceil(static_cast<double>(cfg.k) * std::sqrt(static_cast<double>(N))));

  RunReport rep;
  rep.csv_header = "trial,oracle_queries,interaction_steps,found,success";
  rep.csv_rows.resize(cfg.trials);
  std::vector<double> queries(cfg.trials), success(cfg.trials);
  parallel_trials(cfg.trials, [&](std::size_t t) {
    Rng r = root.child(t + 1);
    auto oracle = build_phase_flip_oracle(env);
    auto verify = [&env](std::size_t a) {
      return env.epoch_reward(env.sequence_from_index(a)) > 0;
    };
    auto out = grover_randomized(oracle, N, r, verify, budget);
    queries[t] = static_cast<double>(out.oracle_queries);
    success[t] = out.success ? 1.0 : 0.0;
    std::ostringstream os;
    os << t << ',' << out.oracle_queries << ',' << out.interaction_steps << ','
       << (out.found ? static_cast<long long>(*out.found) : -1) << ',' << (out.success ? 1 : 0);
    rep.csv_rows[t] = os.str();
  });

  json agg;
  agg["mean_queries"] = mean_of(queries);
  agg["stderr_queries"] = stderr_of(queries);
  agg["success_rate"] = mean_of(success);
  agg["sqrt_space"] = std::sqrt(static_cast<double>(N));
  agg["fixture_fingerprint"] = fx.fingerprint();
  rep.aggregates = agg.dump(2);
  return rep;
}

RunReport run_learn_compare(const ExperimentConfig& cfg) {
  Rng root(cfg.seed);
  Rng gen = root.child(0);
  EnvFixture fx = load_or_generate(cfg, FixtureKind::single_win, gen);
  auto env = fx.build_deterministic();
  std::size_t N = env.num_sequences();
  std::size_t M = env.epoch_length();
  std::size_t k = cfg.k == 0 ? M : cfg.k;
  std::size_t budget = static_cast<std::size_t>(
      std::ceil(static_cast<double>(k) * std::sqrt(static_cast<double>(N))));
  std::size_t T_eval = cfg.T_eval == 0 ? budget * M : cfg.T_eval;
  AgentFactory factory = [eps = cfg.epsilon, n = env.num_actions(), M]() {
    return std::unique_ptr<Agent>(new EpsilonGreedyAgent(eps, n, M));
  };

  RunReport rep;
  rep.csv_header = "trial," + ComparisonReport::csv_header();
  rep.csv_rows.resize(cfg.trials);
  std::vector<double> rq(cfg.trials), rc(cfg.trials), fail(cfg.trials);
  parallel_trials(cfg.trials, [&](std::size_t t) {
    Rng r = root.child(t + 1);
    auto cr = run_quantum_enhanced(factory, env, k, T_eval, r);
    cr.epsilon = cfg.epsilon;
    rq[t] = cr.rate_q;
    rc[t] = cr.rate_c;
    fail[t] = cr.exploration_failed ? 1.0 : 0.0;
    std::ostringstream os;
    os << t << ',' << cr.csv_row();
    rep.csv_rows[t] = os.str();
  });

  json agg;
  agg["mean_rate_q"] = mean_of(rq);
  agg["stderr_rate_q"] = stderr_of(rq);
  agg["mean_rate_c"] = mean_of(rc);
  agg["stderr_rate_c"] = stderr_of(rc);
  agg["gap_ratio"] = mean_of(rq) / std::max(mean_of(rc), 1e-12);
  agg["failure_rate"] = mean_of(fail);
  agg["k"] = k;
  agg["T_eval"] = T_eval;
  agg["fixture_fingerprint"] = fx.fingerprint();
  rep.aggregates = agg.dump(2);
  return rep;
}

RunReport run_stochastic_search(const ExperimentConfig& cfg) {
  Rng root(cfg.seed);
  Rng gen = root.child(0);
  EnvFixture fx = load_or_generate(cfg, FixtureKind::stochastic, gen);
  auto env = fx.build_stochastic();

  RunReport rep;
  rep.csv_header = "trial,markings,interaction_steps,found,p_found,success,ambiguous";
  rep.csv_rows.resize(cfg.trials);
  std::vector<double> markings(cfg.trials), success(cfg.trials);
  parallel_trials(cfg.trials, [&](std::size_t t) {
    Rng r = root.child(t + 1);
    auto oracle = build_stochastic_oracle(env);
    auto out = amplify_above_pmin(oracle, cfg.p_min, cfg.bits, r);
    markings[t] = static_cast<double>(out.oracle_queries);
    success[t] = out.success ? 1.0 : 0.0;
    std::ostringstream os;
    os << t << ',' << out.oracle_queries << ',' << out.interaction_steps << ','
       << (out.found ? static_cast<long long>(*out.found) : -1) << ','
       << (out.found ? fmt(env.reward_prob(*out.found)) : "-1") << ',' << (out.success ? 1 : 0)
       << ',' << (out.ambiguous_threshold ? 1 : 0);
    rep.csv_rows[t] = os.str();
  });

  json agg;
  agg["mean_markings"] = mean_of(markings);
  agg["stderr_markings"] = stderr_of(markings);
  agg["success_rate"] = mean_of(success);
  agg["p_min"] = cfg.p_min;
  agg["bits"] = cfg.bits;
  agg["fixture_fingerprint"] = fx.fingerprint();
  rep.aggregates = agg.dump(2);
  return rep;
}

RunReport run_structural_pair(const ExperimentConfig& cfg) {
  Rng root(cfg.seed);
  Rng gen = root.child(0);
  EnvFixture fx = load_or_generate(cfg, FixtureKind::invasion_game, gen);
  auto env = fx.build_stochastic();
  std::size_t S = env.alphabet().num_percepts();
  std::size_t M = env.epoch_length();

  RunReport rep;
  rep.csv_header = "trial,oracle_queries,interaction_steps,success,a_index,s_index,rewarded";
  rep.csv_rows.resize(cfg.trials);
  std::vector<double> queries(cfg.trials), success(cfg.trials), rewarded(cfg.trials);
  parallel_trials(cfg.trials, [&](std::size_t t) {
    Rng r = root.child(t + 1);
    auto oracle = build_purified_env_unitary(env);
    auto out = sample_rewarding_pair(oracle, r);
    queries[t] = static_cast<double>(out.oracle_queries);
    success[t] = out.success ? 1.0 : 0.0;
    bool rew = false;
    if (out.success) {
      auto a_seq = env.sequence_from_index(out.a_index);
      auto s_seq = decode_base(out.s_index, S, M);
      rew = env.joint_reward(s_seq, a_seq) > 0;
    }
    rewarded[t] = rew ? 1.0 : 0.0;
    std::ostringstream os;
    os << t << ',' << out.oracle_queries << ',' << out.interaction_steps << ','
       << (out.success ? 1 : 0) << ',' << out.a_index << ',' << out.s_index << ','
       << (rew ? 1 : 0);
    rep.csv_rows[t] = os.str();
  });

  double succ = mean_of(success);
  json agg;
  agg["mean_queries"] = mean_of(queries);
  agg["stderr_queries"] = stderr_of(queries);
  agg["success_rate"] = succ;
  agg["rewarded_given_success"] = succ > 0.0 ? mean_of(rewarded) / succ : 0.0;
  agg["gamma_squared"] = fx.gamma_squared();
  agg["fixture_fingerprint"] = fx.fingerprint();
  rep.aggregates = agg.dump(2);
  return rep;
}

RunReport run_lemma_verify(const ExperimentConfig&) {
  RunReport rep;
  rep.csv_header = "lemma,holds,max_deviation";
  auto suite = run_lemma_suite();
  bool all = true;
  json lemmas = json::array();
  for (const auto& lr : suite) {
    all = all && lr.holds;
    rep.csv_rows.push_back(lr.lemma + "," + (lr.holds ? "1" : "0") + "," + fmt(lr.max_deviation));
    json entry;
    entry["lemma"] = lr.lemma;
    entry["holds"] = lr.holds;
    entry["max_deviation"] = lr.max_deviation;
    entry["note"] = lr.note;
    lemmas.push_back(entry);
  }
  json agg;
  agg["all_hold"] = all;
  agg["lemmas"] = lemmas;
  agg["tested_grover_success_quantum"] = tested_grover_success(false);
  agg["tested_grover_success_classicalized"] = tested_grover_success(true);
  rep.aggregates = agg.dump(2);
  return rep;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RunReport rep;
  if (cfg.kind == "search") {
    rep = run_search(cfg);
  } else if (cfg.kind == "learn-compare") {
    rep = run_learn_compare(cfg);
  } else if (cfg.kind == "stochastic-search") {
    rep = run_stochastic_search(cfg);
  } else if (cfg.kind == "lemma-verify") {
    rep = run_lemma_verify(cfg);
  } else if (cfg.kind == "structural-pair") {
    rep = run_structural_pair(cfg);
  } else {
    throw std::invalid_argument("unknown experiment kind: " + cfg.kind);
  }
  rep.config = cfg;
  rep.name = cfg.kind + "_seed" + std::to_string(cfg.seed);
  return rep;
}

void write_report(const RunReport& rep) {
  namespace fs = std::filesystem;
  fs::create_directories(rep.config.out_dir);
  fs::path base = fs::path(rep.config.out_dir) / rep.name;

  json doc;
  doc["config"] = json::parse(rep.config.to_json());
  // The report must be a pure function of the experiment parameters; where
  // the files land is not one of them.
  doc["config"].erase("out_dir");
  doc["aggregates"] = json::parse(rep.aggregates);
  doc["csv_file"] = rep.name + ".csv";
  doc["trials_recorded"] = rep.csv_rows.size();
  std::ofstream jf(base.string() + ".json", std::ios::binary);
  jf << doc.dump(2) << '\n';

  std::ofstream cf(base.string() + ".csv", std::ios::binary);
  cf << rep.csv_header << '\n';
  for (const auto& row : rep.csv_rows) cf << row << '\n';
}

}  // namespace qrl
