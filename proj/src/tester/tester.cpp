#include "qrl/tester/tester.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qrl/core/constants.hpp"

namespace qrl {

namespace {

// Joint density-matrix size guard for tested interactions.
constexpr std::size_t kTestedDimCap = 4096;

// A(sub) * rho, with A acting on `targets` of the layout.
std::vector<cplx> left_mul(const DensityMatrix& rho, const std::vector<cplx>& A,
                           const std::vector<std::size_t>& targets) {
  const auto& layout = rho.layout();
  std::size_t dim = rho.dim();
  std::size_t sub = 1;
  for (auto t : targets) sub *= layout.dim(t);
  // Offset of each target configuration and the target part of each index.
  std::vector<std::size_t> off(sub);
  for (std::size_t s = 0; s < sub; ++s) {
    std::size_t rem = s, o = 0;
    for (std::size_t k = targets.size(); k-- > 0;) {
      std::size_t dk = layout.dim(targets[k]);
      o += (rem % dk) * layout.stride(targets[k]);
      rem /= dk;
    }
    off[s] = o;
  }
  std::vector<std::size_t> tpart(dim), base(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t t = 0;
    for (auto r : targets) t = t * layout.dim(r) + layout.extract(i, r);
    tpart[i] = t;
    base[i] = i - off[t];
  }
  std::vector<cplx> out(dim * dim, cplx{0.0, 0.0});
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t ti = tpart[i], bi = base[i];
    for (std::size_t s = 0; s < sub; ++s) {
      cplx a = A[ti * sub + s];
      if (a == cplx{0.0, 0.0}) continue;
      const cplx* src = &m[(bi + off[s]) * dim];
      cplx* dst = &out[i * dim];
      for (std::size_t j = 0; j < dim; ++j) dst[j] += a * src[j];
    }
  }
  return out;
}

// rho * A(sub)^dag in place of a fresh buffer.
std::vector<cplx> right_mul_adjoint(const std::vector<cplx>& m, const RegisterLayout& layout,
                                    const std::vector<cplx>& A,
                                    const std::vector<std::size_t>& targets) {
  std::size_t dim = layout.total_dim();
  std::size_t sub = 1;
  for (auto t : targets) sub *= layout.dim(t);
  std::vector<std::size_t> off(sub);
  for (std::size_t s = 0; s < sub; ++s) {
    std::size_t rem = s, o = 0;
    for (std::size_t k = targets.size(); k-- > 0;) {
      std::size_t dk = layout.dim(targets[k]);
      o += (rem % dk) * layout.stride(targets[k]);
      rem /= dk;
    }
    off[s] = o;
  }
  std::vector<std::size_t> tpart(dim), base(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::size_t t = 0;
    for (auto r : targets) t = t * layout.dim(r) + layout.extract(j, r);
    tpart[j] = t;
    base[j] = j - off[t];
  }
  std::vector<cplx> out(dim * dim, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < dim; ++j) {
    std::size_t tj = tpart[j], bj = base[j];
    for (std::size_t s = 0; s < sub; ++s) {
      cplx a = std::conj(A[tj * sub + s]);
      if (a == cplx{0.0, 0.0}) continue;
      std::size_t col = bj + off[s];
      for (std::size_t i = 0; i < dim; ++i) out[i * dim + j] += m[i * dim + col] * a;
    }
  }
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const StepMap& step,
                            const std::vector<std::size_t>& targets) {
  std::size_t dim = rho.dim();
  std::vector<cplx> acc(dim * dim, cplx{0.0, 0.0});
  for (const auto& K : step.kraus) {
    auto l = left_mul(rho, K, targets);
    auto r = right_mul_adjoint(l, rho.layout(), K, targets);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += r[i];
  }
  return DensityMatrix(rho.layout(), std::move(acc));
}

std::size_t pow_sz(std::size_t b, std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= b;
  return v;
}

}  // namespace

ChannelActor ChannelActor::unitary_actor(ActorRole role, std::size_t private_dim,
                                         std::size_t symbol_dim, std::vector<cplx> initial,
                                         std::vector<std::vector<cplx>> unitaries) {
  ChannelActor a;
  a.role = role;
  a.private_dim = private_dim;
  a.symbol_dim = symbol_dim;
  a.initial = std::move(initial);
  for (auto& u : unitaries) a.steps.push_back(StepMap{{std::move(u)}});
  a.validate();
  return a;
}

ChannelActor ChannelActor::classical_table(
    ActorRole role, std::size_t private_dim, std::size_t symbol_dim, std::size_t initial_state,
    std::vector<std::vector<std::vector<Transition>>> table) {
  ChannelActor a;
  a.role = role;
  a.private_dim = private_dim;
  a.symbol_dim = symbol_dim;
  a.initial.assign(private_dim, cplx{0.0, 0.0});
  a.initial.at(initial_state) = 1.0;
  std::size_t sub = private_dim * symbol_dim;
  StepMap step;
  for (std::size_t p = 0; p < private_dim; ++p) {
    for (std::size_t y = 0; y < symbol_dim; ++y) {
      for (const auto& tr : table.at(p).at(y)) {
        std::vector<cplx> K(sub * sub, cplx{0.0, 0.0});
        std::size_t row = tr.next_state * symbol_dim + tr.out_symbol;
        std::size_t col = p * symbol_dim + y;
        K[row * sub + col] = std::sqrt(tr.prob);
        step.kraus.push_back(std::move(K));
      }
    }
  }
  a.steps.push_back(std::move(step));
  a.validate();
  return a;
}

void ChannelActor::validate() const {
  if (initial.size() != private_dim) throw std::invalid_argument("actor: bad initial state size");
  double nrm = 0.0;
  for (const auto& x : initial) nrm += std::norm(x);
  if (std::abs(nrm - 1.0) > tol::state_norm) {
    throw std::invalid_argument("actor: initial state not normalized");
  }
  std::size_t sub = private_dim * symbol_dim;
  if (steps.empty()) throw std::invalid_argument("actor: no step maps");
  for (const auto& step : steps) {
    std::vector<cplx> sum(sub * sub, cplx{0.0, 0.0});
    for (const auto& K : step.kraus) {
      if (K.size() != sub * sub) throw std::invalid_argument("actor: bad Kraus dimension");
      for (std::size_t i = 0; i < sub; ++i) {
        for (std::size_t j = 0; j < sub; ++j) {
          cplx acc{0.0, 0.0};
          for (std::size_t k = 0; k < sub; ++k) acc += std::conj(K[k * sub + i]) * K[k * sub + j];
          sum[i * sub + j] += acc;
        }
      }
    }
    for (std::size_t i = 0; i < sub; ++i) {
      for (std::size_t j = 0; j < sub; ++j) {
        cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        if (std::abs(sum[i * sub + j] - want) > tol::unitarity) {
          throw std::invalid_argument("actor: step map is not trace preserving");
        }
      }
    }
  }
}

namespace {

nlohmann::json matrix_to_json(const std::vector<cplx>& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : m) arr.push_back({v.real(), v.imag()});
  return arr;
}

std::vector<cplx> matrix_from_json(const nlohmann::json& arr) {
  std::vector<cplx> m;
  m.reserve(arr.size());
  for (const auto& e : arr) m.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return m;
}

}  // namespace

std::string ChannelActor::to_json() const {
  nlohmann::json j;
  j["role"] = role == ActorRole::agent ? "agent" : "environment";
  j["private_dim"] = private_dim;
  j["symbol_dim"] = symbol_dim;
  j["initial"] = matrix_to_json(initial);
  j["dephase_before"] = dephase_before;
  j["dephase_after"] = dephase_after;
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json step_json = nlohmann::json::array();
    for (const auto& K : s.kraus) step_json.push_back(matrix_to_json(K));
    steps_json.push_back(std::move(step_json));
  }
  j["steps"] = std::move(steps_json);
  return j.dump(2);
}

ChannelActor ChannelActor::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ChannelActor a;
  a.role = j.at("role").get<std::string>() == "agent" ? ActorRole::agent : ActorRole::environment;
  a.private_dim = j.at("private_dim").get<std::size_t>();
  a.symbol_dim = j.at("symbol_dim").get<std::size_t>();
  a.initial = matrix_from_json(j.at("initial"));
  a.dephase_before = j.value("dephase_before", false);
  a.dephase_after = j.value("dephase_after", false);
  for (const auto& step_json : j.at("steps")) {
    StepMap s;
    for (const auto& k : step_json) s.kraus.push_back(matrix_from_json(k));
    a.steps.push_back(std::move(s));
  }
  a.validate();
  return a;
}

Tester Tester::classical() { return Tester{}; }

Tester Tester::sporadic(std::size_t untested_moves) {
  Tester t;
  t.kind_ = Kind::sporadic;
  t.untested_ = untested_moves;
  return t;
}

Tester Tester::custom(std::vector<std::vector<std::vector<cplx>>> per_move) {
  if (per_move.empty()) throw std::invalid_argument("custom tester needs at least one move");
  Tester t;
  t.kind_ = Kind::custom;
  t.custom_ = std::move(per_move);
  return t;
}

bool Tester::tests_move(std::size_t move) const {
  if (kind_ == Kind::sporadic) return move >= untested_;
  return true;
}

UnitaryOp Tester::controlled_map(std::size_t move, std::size_t symbol_dim, std::size_t rc_reg,
                                 std::size_t t_reg) const {
  std::size_t d = symbol_dim;
  std::vector<cplx> m(d * d * d * d, cplx{0.0, 0.0});
  auto idx = [d](std::size_t x, std::size_t t) { return x * d + t; };
  if (kind_ == Kind::custom) {
    const auto& maps = custom_[move % custom_.size()];
    if (maps.size() != d) throw std::invalid_argument("custom tester: need one unitary per symbol");
    for (std::size_t x = 0; x < d; ++x) {
      const auto& u = maps[x];
      if (u.size() != d * d) throw std::invalid_argument("custom tester: bad unitary size");
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          m[idx(x, r) * d * d + idx(x, c)] = u[r * d + c];
        }
      }
    }
  } else {
    // Copy in the classical basis, as the shift |x>|t> -> |x>|t+x mod d>.
    for (std::size_t x = 0; x < d; ++x) {
      for (std::size_t t = 0; t < d; ++t) {
        m[idx(x, (t + x) % d) * d * d + idx(x, t)] = 1.0;
      }
    }
  }
  UnitaryOp op({rc_reg, t_reg}, {d, d}, std::move(m));
  if (!op.is_unitary(tol::unitarity)) throw std::invalid_argument("tester map is not unitary");
  return op;
}

QuantumHistoryState run_tested_interaction(const ChannelActor& agent, const ChannelActor& env,
                                           const Tester& tester, std::size_t moves) {
  agent.validate();
  env.validate();
  if (agent.symbol_dim != env.symbol_dim) {
    throw std::invalid_argument("agent and environment disagree on the symbol alphabet");
  }
  std::size_t d = agent.symbol_dim;
  RegisterLayout layout({agent.private_dim, d, env.private_dim});
  // Initial product state |init_A> |0>_C |init_E>.
  std::vector<cplx> amps(layout.total_dim(), cplx{0.0, 0.0});
  for (std::size_t pa = 0; pa < agent.private_dim; ++pa) {
    for (std::size_t pe = 0; pe < env.private_dim; ++pe) {
      amps[layout.flatten({pa, 0, pe})] = agent.initial[pa] * env.initial[pe];
    }
  }
  DensityMatrix rho = DensityMatrix::from_pure(StateVector(layout, std::move(amps)));

  QuantumHistoryState out;
  out.moves = moves;
  for (std::size_t m = 0; m < moves; ++m) {
    const ChannelActor& actor = (m % 2 == 0) ? env : agent;
    std::size_t priv_reg = (m % 2 == 0) ? 2 : 0;
    if (actor.dephase_before) rho = rho.dephase(1);
    rho = apply_channel(rho, actor.step(m / 2), {priv_reg, 1});
    if (actor.dephase_after) rho = rho.dephase(1);
    if (tester.tests_move(m)) {
      if (rho.dim() * d > kTestedDimCap) {
        throw ResourceError("tested interaction outgrew the density-matrix cap");
      }
      rho = tensor(rho, DensityMatrix(RegisterLayout({d})));
      std::size_t t_reg = rho.layout().num_registers() - 1;
      rho = tester.controlled_map(m, d, 1, t_reg).apply(rho);
      ++out.tested_moves;
    }
    out.reduced_ace.push_back(rho.partial_trace({0, 1, 2}));
  }
  std::vector<std::size_t> keep;
  for (std::size_t r = 3; r < rho.layout().num_registers(); ++r) keep.push_back(r);
  if (!keep.empty()) out.rho = rho.partial_trace(keep);
  return out;
}

InvarianceReport verify_classical_interaction_invariance(const ChannelActor& agent,
                                                         const ChannelActor& env,
                                                         std::size_t moves) {
  auto untested = run_tested_interaction(agent, env, Tester::sporadic(moves), moves);
  auto tested = run_tested_interaction(agent, env, Tester::classical(), moves);
  InvarianceReport rep;
  for (std::size_t m = 0; m < moves; ++m) {
    double dist = trace_distance(untested.reduced_ace[m], tested.reduced_ace[m]);
    rep.max_trace_distance = std::max(rep.max_trace_distance, dist);
  }
  rep.holds = rep.max_trace_distance < tol::ancilla_clean;
  return rep;
}

ChannelActor classicalize(const ChannelActor& actor) {
  ChannelActor out = actor;
  out.dephase_before = true;
  out.dephase_after = true;
  return out;
}

std::pair<ChannelActor, ChannelActor> build_classical_equivalent(const ChannelActor& agent,
                                                                 const ChannelActor& env,
                                                                 const Tester& tester,
                                                                 std::size_t moves) {
  if (tester.kind() != Tester::Kind::classical) {
    auto rep = verify_classical_interaction_invariance(agent, env, moves);
    if (!rep.holds) {
      throw std::invalid_argument(
          "classical equivalent needs a classical interaction or a classical tester");
    }
  }
  std::size_t d = agent.symbol_dim;
  auto hist = run_tested_interaction(agent, env, Tester::classical(), moves);
  // History distribution over symbol strings x_0..x_{t-1}, x_0 most significant.
  std::size_t total = pow_sz(d, moves);
  std::vector<double> P(total);
  for (std::size_t i = 0; i < total; ++i) P[i] = hist.rho.diagonal_prob(i);
  // Marginal of a length-j prefix.
  auto prefix_prob = [&](std::size_t v, std::size_t j) {
    std::size_t block = pow_sz(d, moves - j);
    double p = 0.0;
    for (std::size_t s = 0; s < block; ++s) p += P[v * block + s];
    return p;
  };
  std::size_t priv = total;  // labels are symbol strings of length <= moves

  auto build_actor = [&](ActorRole role) {
    ChannelActor a;
    a.role = role;
    a.private_dim = priv;
    a.symbol_dim = d;
    a.initial.assign(priv, cplx{0.0, 0.0});
    a.initial[0] = 1.0;
    a.dephase_before = true;
    a.dephase_after = true;
    std::size_t first = role == ActorRole::environment ? 0 : 1;
    std::size_t sub = priv * d;
    for (std::size_t m = first; m < moves; m += 2) {
      StepMap step;
      // Valid labels before move m hold the symbols through move m-2.
      std::size_t valid = (m == 0) ? 1 : pow_sz(d, m - 1);
      for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
          std::vector<cplx> K(sub * sub, cplx{0.0, 0.0});
          for (std::size_t l = 0; l < valid; ++l) {
            std::size_t v = (m == 0) ? 0 : l * d + y;  // prefix through move m-1
            double denom = (m == 0) ? 1.0 : prefix_prob(v, m);
            double q = denom > 0.0 ? prefix_prob(v * d + x, m + 1) / denom
                                   : 1.0 / static_cast<double>(d);
            std::size_t l_next = v * d + x;
            K[(l_next * d + x) * sub + (l * d + y)] = std::sqrt(q);
          }
          step.kraus.push_back(std::move(K));
        }
      }
      // Identity on the unreachable labels keeps the map trace preserving.
      std::vector<cplx> rest(sub * sub, cplx{0.0, 0.0});
      for (std::size_t l = valid; l < priv; ++l) {
        for (std::size_t y = 0; y < d; ++y) {
          rest[(l * d + y) * sub + (l * d + y)] = 1.0;
        }
      }
      step.kraus.push_back(std::move(rest));
      a.steps.push_back(std::move(step));
    }
    a.validate();
    return a;
  };

  return {build_actor(ActorRole::agent), build_actor(ActorRole::environment)};
}

}  // namespace qrl
