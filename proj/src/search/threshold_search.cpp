#include "qrl/search/threshold_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qrl {

namespace {

// The comparator conjugation U_Count Z_{>=tau} U_Count is diagonal on the
// sequence register (ancillas start and end in |0>); one application is one
// oracle use.
std::vector<double> threshold_signs(const OracleHandle& oracle, std::size_t threshold) {
  std::size_t N = oracle.layout().dim(0);
  std::vector<double> sign(N);
  for (std::size_t a = 0; a < N; ++a) {
    sign[a] = oracle.counted_total(a) >= threshold ? -1.0 : 1.0;
  }
  return sign;
}

SearchOutcome run_schedule(const OracleHandle& oracle, const std::vector<double>& sign, Rng& rng,
                           std::size_t budget) {
  std::size_t N = sign.size();
  double sqrt_n = std::sqrt(static_cast<double>(N));
  SearchOutcome out;
  double bound = 1.0;
  while (out.oracle_queries < budget) {
    std::size_t j = 1 + rng.uniform_int(static_cast<std::size_t>(std::ceil(bound)));
    j = std::min(j, budget - out.oracle_queries);
    std::vector<cplx> amps(N, cplx{1.0 / sqrt_n, 0.0});
    for (std::size_t it = 0; it < j; ++it) {
      cplx sum{0.0, 0.0};
      for (std::size_t a = 0; a < N; ++a) {
        amps[a] *= sign[a];
        sum += amps[a];
      }
      cplx twice_mean = 2.0 * sum / static_cast<double>(N);
      for (std::size_t a = 0; a < N; ++a) amps[a] = twice_mean - amps[a];
    }
    out.oracle_queries += j;
    oracle.charge_queries(j);
    double u = rng.uniform();
    double acc = 0.0;
    std::size_t candidate = N - 1;
    for (std::size_t a = 0; a < N; ++a) {
      acc += std::norm(amps[a]);
      if (u < acc) {
        candidate = a;
        break;
      }
    }
    if (sign[candidate] < 0.0) {
      out.found = candidate;
      out.success = true;
      break;
    }
    bound = std::min(bound * 1.2, sqrt_n);
  }
  out.interaction_steps = out.oracle_queries * oracle.epoch_length();
  return out;
}

}  // namespace

SearchOutcome amplitude_amplify_threshold(const OracleHandle& counting_oracle,
                                          std::size_t threshold, Rng& rng, std::size_t budget) {
  std::size_t N = counting_oracle.layout().dim(0);
  if (budget == 0) {
    budget = static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(static_cast<double>(N))));
  }
  auto sign = threshold_signs(counting_oracle, threshold);
  return run_schedule(counting_oracle, sign, rng, budget);
}

SearchOutcome find_max_reward(const OracleHandle& counting_oracle, Rng& rng) {
  std::size_t N = counting_oracle.layout().dim(0);
  std::size_t budget = static_cast<std::size_t>(std::ceil(50.0 * std::sqrt(static_cast<double>(N))));
  SearchOutcome out;
  std::size_t best_seq = rng.uniform_int(N);
  std::size_t best = counting_oracle.counted_total(best_seq);
  counting_oracle.charge_queries(1);
  ++out.oracle_queries;
  while (out.oracle_queries < budget) {
    auto attempt = amplitude_amplify_threshold(counting_oracle, best + 1, rng,
                                               budget - out.oracle_queries);
    out.oracle_queries += attempt.oracle_queries;
    if (!attempt.found) break;
    best_seq = *attempt.found;
    best = counting_oracle.counted_total(best_seq);
  }
  out.found = best_seq;
  std::size_t true_max = 0;
  for (std::size_t a = 0; a < N; ++a) true_max = std::max(true_max, counting_oracle.counted_total(a));
  out.success = best == true_max;
  out.interaction_steps = out.oracle_queries * counting_oracle.epoch_length();
  return out;
}

}  // namespace qrl
