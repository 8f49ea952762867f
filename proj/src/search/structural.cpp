#include "qrl/search/structural.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrl {

PairOutcome sample_rewarding_pair(const OracleHandle& purified, Rng& rng, std::size_t budget) {
  double gamma = purified.gamma();
  if (!(gamma > 0.0)) throw std::invalid_argument("environment admits no rewarding pair");
  const auto& layout = purified.layout();
  if (budget == 0) budget = static_cast<std::size_t>(std::ceil(10.0 / gamma)) + 1;

  // The overlap is known, so the iteration count is planned: minimize the
  // expected queries per success, (1 + 2j) / sin^2((2j+1) theta).
  double theta = std::asin(std::min(1.0, gamma));
  std::size_t j_cap = static_cast<std::size_t>(std::ceil(0.25 * std::numbers::pi / theta));
  std::size_t j_star = 0;
  double best_cost = -1.0;
  for (std::size_t j = 0; j <= j_cap; ++j) {
    double s = std::sin(static_cast<double>(2 * j + 1) * theta);
    if (s * s < 1e-12) continue;
    double cost = static_cast<double>(1 + 2 * j) / (s * s);
    if (best_cost < 0.0 || cost < best_cost) {
      best_cost = cost;
      j_star = j;
    }
  }

  // |pi> = S_E (uniform strategy x blank ancillas); one oracle call.
  auto prepare_pi = [&]() {
    StateVector psi(layout);
    auto& amps = psi.mutable_amplitudes();
    std::size_t N = layout.dim(0);
    std::size_t block = amps.size() / N;
    double inv = 1.0 / std::sqrt(static_cast<double>(N));
    std::fill(amps.begin(), amps.end(), cplx{0.0, 0.0});
    for (std::size_t a = 0; a < N; ++a) amps[a * block] = inv;
    purified.apply(psi);
    return psi;
  };
  StateVector pi = prepare_pi();  // charges one query itself

  PairOutcome out;
  while (out.oracle_queries < budget) {
    StateVector psi = pi;
    out.oracle_queries += 1;  // the preparation S_E call
    for (std::size_t it = 0; it < j_star && out.oracle_queries + 2 <= budget; ++it) {
      auto& amps = psi.mutable_amplitudes();
      // Z_III: flip the rewarded component (reward register is last, stride 1).
      for (std::size_t i = 1; i < amps.size(); i += 2) amps[i] = -amps[i];
      // Reflection about |pi> = S_E (reflection about the prepared input) S_E^-1;
      // two oracle calls.
      cplx ov{0.0, 0.0};
      for (std::size_t i = 0; i < amps.size(); ++i) ov += std::conj(pi.amp(i)) * amps[i];
      for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = 2.0 * ov * pi.amp(i) - amps[i];
      }
      out.oracle_queries += 2;
    }
    auto m = psi.measure({0, 1, 2, 3}, rng);
    if (m.outcome[3] == 1) {
      out.a_index = m.outcome[0];
      out.s_index = m.outcome[1];
      out.success = true;
      break;
    }
  }
  if (out.oracle_queries > 1) purified.charge_queries(out.oracle_queries - 1);
  out.interaction_steps = out.oracle_queries * purified.epoch_length();
  return out;
}

}  // namespace qrl
