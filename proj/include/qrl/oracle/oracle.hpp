#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrl/core/state_vector.hpp"
#include "qrl/core/unitary.hpp"
#include "qrl/env/environment.hpp"

namespace qrl {

enum class OracleKind {
  reversible_env,       // |a>|y> -> |a>|y XOR enc(responses(a))>
  phase_flip,           // |a> -> (-1)^Lambda(a) |a>
  counting,             // |a>|y_s>|y_c> -> |a>|y_s XOR enc>|y_c XOR total>
  stochastic_rotation,  // |a>|0> -> |a>(cos t|0> + sin t|1>)
  stochastic_reflection,  // Hermitian variant of the rotation
  purified_env,         // |a>|0>|0>|0> -> |a> sum_s sqrt(p)|s,s>|lambda>
};

std::string to_string(OracleKind kind);

// Unitary black-box stand-in for an epochal environment. One invocation
// costs M interaction steps. The representation is the cheapest faithful
// one per kind (basis permutation, diagonal, 2x2 rotation blocks, or an
// isometry with on-demand completion); dense matrices are materialized only
// within the desk-scale cap.
class OracleHandle {
 public:
  const RegisterLayout& layout() const { return layout_; }
  OracleKind kind() const { return kind_; }
  std::size_t epoch_length() const { return M_; }

  std::size_t queries() const { return queries_; }
  std::size_t interaction_steps() const { return queries_ * M_; }
  void reset_queries() { queries_ = 0; }
  // Charge queries for oracle uses simulated in a reduced representation
  // (e.g. the comparator conjugation applied as an effective diagonal).
  void charge_queries(std::size_t q) const { queries_ += q; }

  // Applies the oracle and charges one query.
  void apply(StateVector& psi) const;
  void apply_adjoint(StateVector& psi) const;

  // Diagonal of a phase_flip oracle (sequence-register basis).
  const std::vector<cplx>& diagonal() const;
  // Rotation angle theta_a of a stochastic oracle.
  double angle(std::size_t sequence_index) const;
  // Total reward of a sequence as written by a counting oracle.
  std::size_t counted_total(std::size_t sequence_index) const;
  // Overlap gamma of the uniform strategy with the rewarded target (purified kind).
  double gamma() const { return gamma_; }

  // Dense materialization over the full layout; throws ResourceError above
  // the materialization cap.
  UnitaryOp to_unitary() const;

  // Portable dump: one JSON header line (dims, kind, fingerprint), then the
  // row-major complex matrix as little-endian doubles.
  void export_binary(const std::string& path) const;

  // FNV-1a over the oracle's representation; stable identifier of the
  // underlying environment table.
  std::uint64_t fingerprint() const;

  static constexpr std::size_t kDenseCap = 1024;

 private:
  friend OracleHandle build_reversible_env_unitary(const EpochalDeterministicEnv& env);
  friend OracleHandle build_phase_flip_oracle(const EpochalDeterministicEnv& env);
  friend OracleHandle build_counting_oracle(const EpochalDeterministicEnv& env);
  friend OracleHandle build_stochastic_oracle(const StochasticEpochalEnv& env,
                                              bool self_inverse);
  friend OracleHandle build_purified_env_unitary(const StochasticEpochalEnv& env);

  OracleHandle(RegisterLayout layout, OracleKind kind, std::size_t M)
      : layout_(std::move(layout)), kind_(kind), M_(M) {}

  RegisterLayout layout_;
  OracleKind kind_;
  std::size_t M_;
  mutable std::size_t queries_ = 0;

  std::vector<std::size_t> perm_;   // permutation kinds
  std::vector<cplx> diag_;          // phase_flip
  std::vector<double> angles_;      // stochastic kinds
  std::vector<cplx> isometry_;      // purified: column a at [i * N + a]
  double gamma_ = 0.0;
};

// Per-step response encoding used by the reversible oracles: slot i gets
// ceil(log2(#distinct responses at step i)) bits, slots with a single
// possible response get none.
struct PerceptBlockEncoding {
  // codes[i][v] maps response-value rank to its bit code; values[i] lists the
  // distinct (percept, reward) pairs reachable at step i in a fixed order.
  std::vector<std::vector<RewardedPercept>> values;
  std::vector<std::size_t> bits;
  std::size_t total_bits = 0;

  static PerceptBlockEncoding build(const EpochalDeterministicEnv& env);
  // Packed code of a full response sequence.
  std::size_t encode(const std::vector<RewardedPercept>& responses) const;
  // Decode a packed code; padded (unreachable) slot codes yield nullopt.
  std::optional<std::vector<RewardedPercept>> decode(std::size_t code) const;
  std::size_t register_dim() const { return std::size_t{1} << total_bits; }
};

OracleHandle build_reversible_env_unitary(const EpochalDeterministicEnv& env);
OracleHandle build_phase_flip_oracle(const EpochalDeterministicEnv& env);
OracleHandle build_counting_oracle(const EpochalDeterministicEnv& env);
OracleHandle build_stochastic_oracle(const StochasticEpochalEnv& env, bool self_inverse = false);
OracleHandle build_purified_env_unitary(const StochasticEpochalEnv& env);

}  // namespace qrl
