#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qrl/core/density_matrix.hpp"
#include "qrl/core/unitary.hpp"

namespace qrl {

enum class ActorRole { agent, environment };

// One move of an actor: a CPTP map over (private register, communication
// register), given as Kraus operators. A unitary move is a single operator.
struct StepMap {
  std::vector<std::vector<cplx>> kraus;  // row-major (private_dim*symbol_dim)^2
};

// Agent or environment in the tested-interaction picture: a private register
// with a pure initial state and one map per own move (cycled when the
// interaction is longer than the list).
struct ChannelActor {
  ActorRole role = ActorRole::environment;
  std::size_t private_dim = 1;
  std::size_t symbol_dim = 2;
  std::vector<cplx> initial;  // pure private state amplitudes
  std::vector<StepMap> steps;
  // Classical-basis dephasing of the communication register around each move.
  bool dephase_before = false;
  bool dephase_after = false;

  static ChannelActor unitary_actor(ActorRole role, std::size_t private_dim,
                                    std::size_t symbol_dim, std::vector<cplx> initial,
                                    std::vector<std::vector<cplx>> unitaries);

  struct Transition {
    double prob;
    std::size_t next_state;
    std::size_t out_symbol;
  };
  // table[p][y] lists the stochastic branches taken when the private state is
  // p and the communication register holds y.
  static ChannelActor classical_table(
      ActorRole role, std::size_t private_dim, std::size_t symbol_dim,
      std::size_t initial_state,
      std::vector<std::vector<std::vector<Transition>>> table);

  const StepMap& step(std::size_t own_move) const { return steps[own_move % steps.size()]; }
  // Kraus completeness (sum K^dag K = I) within tolerance.
  void validate() const;

  std::string to_json() const;
  static ChannelActor from_json(const std::string& text);
};

// Third party applying classical-basis-controlled unitaries to the
// communication register after each move, each on a fresh subsystem.
class Tester {
 public:
  enum class Kind { classical, sporadic, custom };

  static Tester classical();
  static Tester sporadic(std::size_t untested_moves);
  // per_move[m][x] is the d x d unitary applied to the fresh subsystem when
  // the communication register holds x; cycled over moves.
  static Tester custom(std::vector<std::vector<std::vector<cplx>>> per_move);

  Kind kind() const { return kind_; }
  std::size_t untested_moves() const { return untested_; }
  bool tests_move(std::size_t move) const;
  // Controlled map on (communication register, fresh tester register).
  UnitaryOp controlled_map(std::size_t move, std::size_t symbol_dim, std::size_t rc_reg,
                           std::size_t t_reg) const;

 private:
  Kind kind_ = Kind::classical;
  std::size_t untested_ = 0;
  std::vector<std::vector<std::vector<cplx>>> custom_;
};

struct QuantumHistoryState {
  // State of the tester registers, one per tested move (a trivial
  // one-dimensional register when nothing was tested).
  DensityMatrix rho{RegisterLayout({1})};
  std::size_t moves = 0;
  std::size_t tested_moves = 0;
  // Reduced state of (agent private, communication, env private) after each move.
  std::vector<DensityMatrix> reduced_ace;
};

// Environment moves at even indices, agent at odd; the tester acts after
// every tested move on a fresh subsystem.
QuantumHistoryState run_tested_interaction(const ChannelActor& agent, const ChannelActor& env,
                                           const Tester& tester, std::size_t moves);

struct InvarianceReport {
  bool holds = false;
  double max_trace_distance = 0.0;
};

// Lemma 1 check: the reduced actor/communication dynamics with a classical
// tester matches the untested dynamics at every move.
InvarianceReport verify_classical_interaction_invariance(const ChannelActor& agent,
                                                         const ChannelActor& env,
                                                         std::size_t moves);

// Sandwiches every move with classical-basis dephasing of the communication
// register.
ChannelActor classicalize(const ChannelActor& actor);

// Lemma 2/3 construction: a classical pair whose tested history state matches
// the original's for the given tester. Requires a classical interaction or a
// classical tester.
std::pair<ChannelActor, ChannelActor> build_classical_equivalent(const ChannelActor& agent,
                                                                 const ChannelActor& env,
                                                                 const Tester& tester,
                                                                 std::size_t moves);

}  // namespace qrl
