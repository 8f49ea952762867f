#include "qrl/search/grover.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qrl {

std::string SearchOutcome::to_json() const {
  nlohmann::json j;
  if (found) {
    j["found"] = *found;
  } else {
    j["found"] = nullptr;
  }
  j["queries"] = oracle_queries;
  j["interaction_steps"] = interaction_steps;
  j["success"] = success;
  if (ambiguous_threshold) j["ambiguous_threshold"] = true;
  return j.dump();
}

void reflect_about_uniform(StateVector& psi, std::size_t seq_dim) {
  auto& amps = psi.mutable_amplitudes();
  std::size_t block = amps.size() / seq_dim;
  for (std::size_t r = 0; r < block; ++r) {
    cplx sum{0.0, 0.0};
    for (std::size_t a = 0; a < seq_dim; ++a) sum += amps[a * block + r];
    cplx twice_mean = 2.0 * sum / static_cast<double>(seq_dim);
    for (std::size_t a = 0; a < seq_dim; ++a) {
      amps[a * block + r] = twice_mean - amps[a * block + r];
    }
  }
}

double grover_success_probability(std::size_t N, std::size_t m, std::size_t iterations) {
  if (m > N) throw std::invalid_argument("more marked items than the search space");
  double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(N)));
  double s = std::sin(static_cast<double>(2 * iterations + 1) * theta);
  return s * s;
}

namespace {

StateVector grover_evolve(const OracleHandle& oracle, std::size_t iterations) {
  StateVector psi = StateVector::uniform(oracle.layout());
  std::size_t N = oracle.layout().dim(0);
  for (std::size_t i = 0; i < iterations; ++i) {
    oracle.apply(psi);
    reflect_about_uniform(psi, N);
  }
  return psi;
}

}  // namespace

double grover_marked_probability(const OracleHandle& phase_oracle, std::size_t iterations) {
  StateVector psi = grover_evolve(phase_oracle, iterations);
  const auto& diag = phase_oracle.diagonal();
  double p = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i].real() < 0.0) p += std::norm(psi.amp(i));
  }
  return p;
}

SearchOutcome grover_fixed(const OracleHandle& phase_oracle, std::size_t iterations, Rng& rng,
                           const Verifier& verify) {
  std::size_t before = phase_oracle.queries();
  StateVector psi = grover_evolve(phase_oracle, iterations);
  auto m = psi.measure({0}, rng);
  SearchOutcome out;
  out.oracle_queries = phase_oracle.queries() - before;
  out.interaction_steps = out.oracle_queries * phase_oracle.epoch_length();
  std::size_t candidate = m.outcome[0];
  if (verify(candidate)) {
    out.found = candidate;
    out.success = true;
  }
  return out;
}

SearchOutcome grover_randomized(const OracleHandle& phase_oracle, std::size_t N, Rng& rng,
                                const Verifier& verify, std::size_t budget) {
  double sqrt_n = std::sqrt(static_cast<double>(N));
  if (budget == 0) budget = static_cast<std::size_t>(std::ceil(10.0 * sqrt_n));
  SearchOutcome out;
  // Classical opening sample; its verification epoch costs one query.
  out.oracle_queries = 1;
  phase_oracle.charge_queries(1);
  std::size_t guess = rng.uniform_int(N);
  if (verify(guess)) {
    out.found = guess;
    out.success = true;
    out.interaction_steps = out.oracle_queries * phase_oracle.epoch_length();
    return out;
  }
  double bound = 1.0;
  while (out.oracle_queries < budget) {
    std::size_t j = 1 + rng.uniform_int(static_cast<std::size_t>(std::ceil(bound)));
    std::size_t remaining = budget - out.oracle_queries;
    if (j > remaining) j = remaining;
    StateVector psi = grover_evolve(phase_oracle, j);
    // The candidate check replays one real epoch, charged like an oracle call.
    phase_oracle.charge_queries(1);
    out.oracle_queries += j + 1;
    std::size_t candidate = psi.measure({0}, rng).outcome[0];
    if (verify(candidate)) {
      out.found = candidate;
      out.success = true;
      break;
    }
    bound = std::min(bound * 1.2, sqrt_n);
  }
  out.interaction_steps = out.oracle_queries * phase_oracle.epoch_length();
  return out;
}

}  // namespace qrl
