#include "qrl/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qrl/core/constants.hpp"

namespace qrl {

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::reversible_env: return "reversible_env";
    case OracleKind::phase_flip: return "phase_flip";
    case OracleKind::counting: return "counting";
    case OracleKind::stochastic_rotation: return "stochastic_rotation";
    case OracleKind::stochastic_reflection: return "stochastic_reflection";
    case OracleKind::purified_env: return "purified_env";
  }
  throw std::logic_error("unknown oracle kind");
}

namespace {

std::size_t bits_for(std::size_t count) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < count) ++b;
  return b;
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

PerceptBlockEncoding PerceptBlockEncoding::build(const EpochalDeterministicEnv& env) {
  PerceptBlockEncoding enc;
  std::size_t M = env.epoch_length();
  enc.values.resize(M);
  for (std::size_t idx = 0; idx < env.num_sequences(); ++idx) {
    auto resp = env.respond(env.sequence_from_index(idx));
    for (std::size_t i = 0; i < M; ++i) {
      auto& vals = enc.values[i];
      if (std::find(vals.begin(), vals.end(), resp[i]) == vals.end()) vals.push_back(resp[i]);
    }
  }
  auto key = [](const RewardedPercept& p) { return std::pair{p.percept, p.reward}; };
  for (auto& vals : enc.values) {
    std::sort(vals.begin(), vals.end(),
              [&](const RewardedPercept& a, const RewardedPercept& b) { return key(a) < key(b); });
  }
  enc.bits.resize(M);
  for (std::size_t i = 0; i < M; ++i) {
    enc.bits[i] = bits_for(enc.values[i].size());
    enc.total_bits += enc.bits[i];
  }
  return enc;
}

std::size_t PerceptBlockEncoding::encode(const std::vector<RewardedPercept>& responses) const {
  if (responses.size() != values.size()) throw std::invalid_argument("encode: wrong slot count");
  std::size_t code = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto it = std::find(values[i].begin(), values[i].end(), responses[i]);
    if (it == values[i].end()) throw std::invalid_argument("encode: response outside the table");
    code = (code << bits[i]) | static_cast<std::size_t>(it - values[i].begin());
  }
  return code;
}

std::optional<std::vector<RewardedPercept>> PerceptBlockEncoding::decode(std::size_t code) const {
  std::vector<RewardedPercept> out(values.size());
  for (std::size_t i = values.size(); i-- > 0;) {
    std::size_t rank = code & ((std::size_t{1} << bits[i]) - 1);
    code >>= bits[i];
    if (rank >= values[i].size()) return std::nullopt;
    out[i] = values[i][rank];
  }
  if (code != 0) return std::nullopt;
  return out;
}

OracleHandle build_reversible_env_unitary(const EpochalDeterministicEnv& env) {
  auto enc = PerceptBlockEncoding::build(env);
  std::size_t N = env.num_sequences();
  std::size_t Y = enc.register_dim();
  RegisterLayout layout({N, Y});
  OracleHandle h(layout, OracleKind::reversible_env, env.epoch_length());
  h.perm_.resize(N * Y);
  for (std::size_t a = 0; a < N; ++a) {
    std::size_t ea = enc.encode(env.respond(env.sequence_from_index(a)));
    for (std::size_t y = 0; y < Y; ++y) h.perm_[a * Y + y] = a * Y + (y ^ ea);
  }
  return h;
}

OracleHandle build_phase_flip_oracle(const EpochalDeterministicEnv& env) {
  auto enc = PerceptBlockEncoding::build(env);
  std::size_t N = env.num_sequences();
  RegisterLayout layout({N});
  OracleHandle h(layout, OracleKind::phase_flip, env.epoch_length());
  h.diag_.resize(N);
  for (std::size_t a = 0; a < N; ++a) {
    // Kick-back trace: |a>|0> -> U_E -> Z on the reward content -> U_E.
    std::size_t y = enc.encode(env.respond(env.sequence_from_index(a)));
    auto decoded = enc.decode(y);
    if (!decoded) throw std::logic_error("phase flip oracle: ancilla left the coded subspace");
    int total = 0;
    for (const auto& p : *decoded) total += p.reward;
    if (total > 1) throw std::invalid_argument("phase flip oracle needs a binary-reward table");
    // Second XOR with the same code returns the ancilla to |0> exactly.
    h.diag_[a] = (total > 0) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
  }
  return h;
}

OracleHandle build_counting_oracle(const EpochalDeterministicEnv& env) {
  auto enc = PerceptBlockEncoding::build(env);
  std::size_t N = env.num_sequences();
  std::size_t Ys = enc.register_dim();
  std::size_t max_total = env.epoch_length() * static_cast<std::size_t>(env.lambda_max());
  std::size_t Yc = next_pow2(max_total + 1);
  if (Yc <= max_total) throw std::invalid_argument("count register too small");
  RegisterLayout layout({N, Ys, Yc});
  OracleHandle h(layout, OracleKind::counting, env.epoch_length());
  h.perm_.resize(N * Ys * Yc);
  for (std::size_t a = 0; a < N; ++a) {
    std::size_t ea = enc.encode(env.respond(env.sequence_from_index(a)));
    std::size_t total = static_cast<std::size_t>(env.total_reward(env.sequence_from_index(a)));
    for (std::size_t ys = 0; ys < Ys; ++ys) {
      for (std::size_t yc = 0; yc < Yc; ++yc) {
        h.perm_[(a * Ys + ys) * Yc + yc] = (a * Ys + (ys ^ ea)) * Yc + (yc ^ total);
      }
    }
  }
  return h;
}

OracleHandle build_stochastic_oracle(const StochasticEpochalEnv& env, bool self_inverse) {
  std::size_t N = env.num_sequences();
  RegisterLayout layout({N, 2});
  OracleHandle h(layout, self_inverse ? OracleKind::stochastic_reflection
                                      : OracleKind::stochastic_rotation,
                 env.epoch_length());
  h.angles_.resize(N);
  for (std::size_t a = 0; a < N; ++a) h.angles_[a] = env.theta(a);
  return h;
}

OracleHandle build_purified_env_unitary(const StochasticEpochalEnv& env) {
  if (!env.has_percept_distribution()) {
    throw std::invalid_argument("purified oracle needs a percept distribution");
  }
  std::size_t N = env.num_sequences();
  std::size_t M = env.epoch_length();
  std::size_t S = env.alphabet().num_percepts();
  std::size_t SM = 1;
  for (std::size_t i = 0; i < M; ++i) SM *= S;
  RegisterLayout layout({N, SM, SM, 2});
  std::size_t dim = layout.total_dim();
  OracleHandle h(layout, OracleKind::purified_env, M);
  h.isometry_.assign(dim * N, cplx{0.0, 0.0});
  const auto& dist = env.percept_dist();
  for (std::size_t a = 0; a < N; ++a) {
    auto a_seq = env.sequence_from_index(a);
    for (std::size_t si = 0; si < SM; ++si) {
      std::vector<std::size_t> s_seq(M);
      std::size_t rem = si;
      double p = 1.0;
      for (std::size_t i = M; i-- > 0;) {
        s_seq[i] = rem % S;
        rem /= S;
        p *= dist[s_seq[i]];
      }
      if (p <= 0.0) continue;
      std::size_t lam = env.joint_reward(s_seq, a_seq) > 0 ? 1 : 0;
      std::size_t row = ((a * SM + si) * SM + si) * 2 + lam;
      h.isometry_[row * N + a] = std::sqrt(p);
    }
  }
  // gamma = rewarded-component norm of the uniform strategy state.
  double g2 = 0.0;
  double inv_n = 1.0 / static_cast<double>(N);
  for (std::size_t row = 0; row < dim; ++row) {
    if (row % 2 != 1) continue;
    cplx amp{0.0, 0.0};
    for (std::size_t a = 0; a < N; ++a) amp += h.isometry_[row * N + a];
    g2 += std::norm(amp) * inv_n;
  }
  h.gamma_ = std::sqrt(g2);
  return h;
}

void OracleHandle::apply(StateVector& psi) const {
  if (!(psi.layout() == layout_)) throw std::invalid_argument("oracle: layout mismatch");
  auto& amps = psi.mutable_amplitudes();
  switch (kind_) {
    case OracleKind::reversible_env:
    case OracleKind::counting: {
      std::vector<cplx> out(amps.size());
      for (std::size_t i = 0; i < amps.size(); ++i) out[perm_[i]] = amps[i];
      amps.swap(out);
      break;
    }
    case OracleKind::phase_flip: {
      for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= diag_[i];
      break;
    }
    case OracleKind::stochastic_rotation: {
      for (std::size_t a = 0; a < angles_.size(); ++a) {
        double c = std::cos(angles_[a]), s = std::sin(angles_[a]);
        cplx v0 = amps[2 * a], v1 = amps[2 * a + 1];
        amps[2 * a] = c * v0 - s * v1;
        amps[2 * a + 1] = s * v0 + c * v1;
      }
      break;
    }
    case OracleKind::stochastic_reflection: {
      for (std::size_t a = 0; a < angles_.size(); ++a) {
        double c = std::cos(2.0 * angles_[a]), s = std::sin(2.0 * angles_[a]);
        cplx v0 = amps[2 * a], v1 = amps[2 * a + 1];
        amps[2 * a] = c * v0 + s * v1;
        amps[2 * a + 1] = s * v0 - c * v1;
      }
      break;
    }
    case OracleKind::purified_env: {
      // Defined on the prepared domain: support on all-zero ancillas.
      std::size_t N = angles_.empty() ? layout_.dim(0) : angles_.size();
      std::size_t block = amps.size() / N;
      std::vector<cplx> in_col(N);
      for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t r = 0; r < block; ++r) {
          if (r != 0 && std::abs(amps[a * block + r]) > tol::state_norm) {
            throw std::logic_error("purified oracle applied outside its prepared domain");
          }
        }
        in_col[a] = amps[a * block];
      }
      std::fill(amps.begin(), amps.end(), cplx{0.0, 0.0});
      for (std::size_t row = 0; row < amps.size(); ++row) {
        cplx acc{0.0, 0.0};
        for (std::size_t a = 0; a < N; ++a) acc += isometry_[row * N + a] * in_col[a];
        amps[row] = acc;
      }
      break;
    }
  }
  ++queries_;
}

void OracleHandle::apply_adjoint(StateVector& psi) const {
  if (!(psi.layout() == layout_)) throw std::invalid_argument("oracle: layout mismatch");
  auto& amps = psi.mutable_amplitudes();
  switch (kind_) {
    case OracleKind::reversible_env:
    case OracleKind::counting:
    case OracleKind::phase_flip:
    case OracleKind::stochastic_reflection:
      // Self-inverse representations.
      apply(psi);
      return;
    case OracleKind::stochastic_rotation: {
      for (std::size_t a = 0; a < angles_.size(); ++a) {
        double c = std::cos(angles_[a]), s = std::sin(angles_[a]);
        cplx v0 = amps[2 * a], v1 = amps[2 * a + 1];
        amps[2 * a] = c * v0 + s * v1;
        amps[2 * a + 1] = -s * v0 + c * v1;
      }
      break;
    }
    case OracleKind::purified_env: {
      std::size_t N = layout_.dim(0);
      std::size_t block = amps.size() / N;
      std::vector<cplx> cols(N, cplx{0.0, 0.0});
      double in_norm = 0.0;
      for (std::size_t row = 0; row < amps.size(); ++row) {
        in_norm += std::norm(amps[row]);
        if (amps[row] == cplx{0.0, 0.0}) continue;
        for (std::size_t a = 0; a < N; ++a) cols[a] += std::conj(isometry_[row * N + a]) * amps[row];
      }
      double out_norm = 0.0;
      for (const auto& c : cols) out_norm += std::norm(c);
      if (std::abs(out_norm - in_norm) > tol::state_norm) {
        throw std::logic_error("purified oracle adjoint applied outside its image");
      }
      std::fill(amps.begin(), amps.end(), cplx{0.0, 0.0});
      for (std::size_t a = 0; a < N; ++a) amps[a * block] = cols[a];
      break;
    }
  }
  ++queries_;
}

const std::vector<cplx>& OracleHandle::diagonal() const {
  if (kind_ != OracleKind::phase_flip) throw std::logic_error("oracle has no diagonal form");
  return diag_;
}

std::size_t OracleHandle::counted_total(std::size_t sequence_index) const {
  if (kind_ != OracleKind::counting) throw std::logic_error("oracle is not a counting oracle");
  std::size_t Ys = layout_.dim(1), Yc = layout_.dim(2);
  std::size_t mapped = perm_[(sequence_index * Ys) * Yc];
  return mapped % Yc;
}

double OracleHandle::angle(std::size_t sequence_index) const {
  if (angles_.empty()) throw std::logic_error("oracle has no rotation angles");
  return angles_.at(sequence_index);
}

UnitaryOp OracleHandle::to_unitary() const {
  std::size_t dim = layout_.total_dim();
  if (dim > kDenseCap) {
    throw ResourceError("dense oracle materialization above the cap");
  }
  std::vector<std::size_t> targets(layout_.num_registers());
  for (std::size_t r = 0; r < targets.size(); ++r) targets[r] = r;
  switch (kind_) {
    case OracleKind::reversible_env:
    case OracleKind::counting:
      return UnitaryOp::permutation(targets, layout_.dims(), perm_);
    case OracleKind::phase_flip:
      return UnitaryOp::diagonal(targets, layout_.dims(), diag_);
    case OracleKind::stochastic_rotation:
    case OracleKind::stochastic_reflection: {
      std::vector<cplx> m(dim * dim, cplx{0.0, 0.0});
      bool refl = kind_ == OracleKind::stochastic_reflection;
      for (std::size_t a = 0; a < angles_.size(); ++a) {
        double t = refl ? 2.0 * angles_[a] : angles_[a];
        double c = std::cos(t), s = std::sin(t);
        std::size_t i0 = 2 * a, i1 = 2 * a + 1;
        m[i0 * dim + i0] = c;
        m[i0 * dim + i1] = refl ? s : -s;
        m[i1 * dim + i0] = s;
        m[i1 * dim + i1] = refl ? -c : c;
      }
      return UnitaryOp(targets, layout_.dims(), std::move(m));
    }
    case OracleKind::purified_env: {
      // Complete the isometry to a unitary by Gram-Schmidt over the basis.
      std::size_t N = layout_.dim(0);
      std::vector<std::vector<cplx>> cols;
      cols.reserve(dim);
      for (std::size_t a = 0; a < N; ++a) {
        std::vector<cplx> c(dim);
        for (std::size_t row = 0; row < dim; ++row) c[row] = isometry_[row * N + a];
        cols.push_back(std::move(c));
      }
      for (std::size_t b = 0; b < dim && cols.size() < dim; ++b) {
        std::vector<cplx> c(dim, cplx{0.0, 0.0});
        c[b] = 1.0;
        for (const auto& prev : cols) {
          cplx ov{0.0, 0.0};
          for (std::size_t i = 0; i < dim; ++i) ov += std::conj(prev[i]) * c[i];
          for (std::size_t i = 0; i < dim; ++i) c[i] -= ov * prev[i];
        }
        double nrm = 0.0;
        for (const auto& x : c) nrm += std::norm(x);
        if (nrm < 1e-12) continue;
        nrm = std::sqrt(nrm);
        for (auto& x : c) x /= nrm;
        cols.push_back(std::move(c));
      }
      if (cols.size() != dim) throw std::logic_error("isometry completion failed");
      // Input basis order: prepared columns first are |a,0,0,0>, which sit at
      // flat indices a*block; place them there and the fill-ins elsewhere.
      std::size_t block = dim / N;
      std::vector<cplx> m(dim * dim, cplx{0.0, 0.0});
      std::size_t fill = N;
      for (std::size_t col_idx = 0; col_idx < dim; ++col_idx) {
        const std::vector<cplx>* src;
        if (col_idx % block == 0) {
          src = &cols[col_idx / block];
        } else {
          src = &cols[fill++];
        }
        for (std::size_t row = 0; row < dim; ++row) m[row * dim + col_idx] = (*src)[row];
      }
      return UnitaryOp(targets, layout_.dims(), std::move(m));
    }
  }
  throw std::logic_error("unknown oracle kind");
}

std::uint64_t OracleHandle::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  std::string kind = to_string(kind_);
  mix(kind.data(), kind.size());
  for (auto d : layout_.dims()) mix(&d, sizeof(d));
  mix(&M_, sizeof(M_));
  if (!perm_.empty()) mix(perm_.data(), perm_.size() * sizeof(std::size_t));
  if (!diag_.empty()) mix(diag_.data(), diag_.size() * sizeof(cplx));
  if (!angles_.empty()) mix(angles_.data(), angles_.size() * sizeof(double));
  if (!isometry_.empty()) mix(isometry_.data(), isometry_.size() * sizeof(cplx));
  return h;
}

void OracleHandle::export_binary(const std::string& path) const {
  UnitaryOp u = to_unitary();
  nlohmann::json header;
  header["kind"] = to_string(kind_);
  header["dims"] = layout_.dims();
  header["fingerprint"] = fingerprint();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << header.dump() << '\n';
  static_assert(sizeof(double) == 8);
  std::size_t dim = u.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      cplx v = u.at(i, j);
      double re = v.real(), im = v.imag();
      // The build targets little-endian hosts; byte order is the host's.
      out.write(reinterpret_cast<const char*>(&re), sizeof(re));
      out.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
  }
}

}  // namespace qrl
