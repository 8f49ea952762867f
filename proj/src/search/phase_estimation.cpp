#include "qrl/search/phase_estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qrl/core/constants.hpp"

namespace qrl {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t fold(std::size_t f, std::size_t D) { return std::min(f, D - f); }

// Fourier transform on the phase index of a (D x 2) block; sign +1 for the
// forward transform, -1 for the inverse.
void qft_phase(std::vector<cplx>& block, std::size_t D, int sign) {
  std::vector<cplx> out(block.size(), cplx{0.0, 0.0});
  double scale = 1.0 / std::sqrt(static_cast<double>(D));
  for (std::size_t k = 0; k < D; ++k) {
    for (std::size_t j = 0; j < D; ++j) {
      double ang = sign * 2.0 * kPi * static_cast<double>(j * k) / static_cast<double>(D);
      cplx w = std::polar(scale, ang);
      out[k * 2] += w * block[j * 2];
      out[k * 2 + 1] += w * block[j * 2 + 1];
    }
  }
  block.swap(out);
}

// Controlled powers of the reward rotation's Grover iterate: |j>|q> gets the
// rotation by 2 j theta (sign -1 for the adjoint).
void controlled_powers(std::vector<cplx>& block, std::size_t D, double theta, int sign) {
  for (std::size_t j = 0; j < D; ++j) {
    double ang = sign * 2.0 * static_cast<double>(j) * theta;
    double c = std::cos(ang), s = std::sin(ang);
    cplx v0 = block[j * 2], v1 = block[j * 2 + 1];
    block[j * 2] = c * v0 - s * v1;
    block[j * 2 + 1] = s * v0 + c * v1;
  }
}

// One marking pass on the (D x 2) block of sequence a: estimate, flip
// grid indices >= t_min, uncompute.
void marking_pass(std::vector<cplx>& block, std::size_t D, double theta, std::size_t t_min) {
  qft_phase(block, D, +1);
  controlled_powers(block, D, theta, +1);
  qft_phase(block, D, -1);
  for (std::size_t f = 0; f < D; ++f) {
    if (fold(f, D) >= t_min) {
      block[f * 2] = -block[f * 2];
      block[f * 2 + 1] = -block[f * 2 + 1];
    }
  }
  qft_phase(block, D, +1);
  controlled_powers(block, D, theta, -1);
  qft_phase(block, D, -1);
}

void check_estimator_dims(std::size_t l) {
  if (l < 1) throw std::invalid_argument("estimator needs at least 1 bit");
  if ((std::size_t{1} << l) * 2 > kDenseDimCap) {
    throw ResourceError("estimator register above the dense cap");
  }
}

}  // namespace

std::size_t default_estimator_bits(double p_min) {
  if (!(p_min > 0.0 && p_min <= 1.0)) throw std::invalid_argument("p_min outside (0,1]");
  double theta_min = std::asin(std::sqrt(p_min));
  return static_cast<std::size_t>(std::ceil(std::log2(kPi / theta_min))) + 2;
}

EstimateOutcome phase_estimate_reward(const OracleHandle& stochastic_oracle, std::size_t a,
                                      std::size_t l, Rng& rng) {
  check_estimator_dims(l);
  std::size_t D = std::size_t{1} << l;
  double theta = stochastic_oracle.angle(a);
  // |0>_phase |0>_reward through QFT, controlled powers, inverse QFT.
  std::vector<cplx> block(D * 2, cplx{0.0, 0.0});
  block[0] = 1.0;
  qft_phase(block, D, +1);
  controlled_powers(block, D, theta, +1);
  qft_phase(block, D, -1);
  stochastic_oracle.charge_queries(D - 1);

  double u = rng.uniform();
  double acc = 0.0;
  std::size_t f = D - 1;
  for (std::size_t k = 0; k < D; ++k) {
    acc += std::norm(block[k * 2]) + std::norm(block[k * 2 + 1]);
    if (u < acc) {
      f = k;
      break;
    }
  }
  EstimateOutcome out;
  out.sequence_index = a;
  out.bits = l;
  out.theta_estimate = kPi * static_cast<double>(fold(f, D)) / static_cast<double>(D);
  double s = std::sin(out.theta_estimate);
  out.p_estimate = s * s;
  out.oracle_queries = D - 1;
  out.interaction_steps = out.oracle_queries * stochastic_oracle.epoch_length();
  return out;
}

SearchOutcome amplify_above_pmin(const OracleHandle& stochastic_oracle, double p_min,
                                 std::size_t l, Rng& rng, std::size_t budget) {
  check_estimator_dims(l);
  std::size_t N = stochastic_oracle.layout().dim(0);
  std::size_t D = std::size_t{1} << l;
  double sqrt_n = std::sqrt(static_cast<double>(N));
  if (budget == 0) budget = static_cast<std::size_t>(std::ceil(10.0 * sqrt_n));
  double theta_min = std::asin(std::sqrt(p_min));
  std::size_t t_min = static_cast<std::size_t>(
      std::ceil(theta_min * static_cast<double>(D) / kPi));

  SearchOutcome out;
  for (std::size_t a = 0; a < N; ++a) {
    if (std::abs(stochastic_oracle.angle(a) - theta_min) < kPi / static_cast<double>(D)) {
      out.ambiguous_threshold = true;
    }
  }

  double bound = 1.0;
  std::size_t markings = 0;
  while (markings < budget) {
    std::size_t j = 1 + rng.uniform_int(static_cast<std::size_t>(std::ceil(bound)));
    j = std::min(j, budget - markings);
    // Joint state: sequence x phase x reward, prepared uniform x |0>|0>.
    std::vector<cplx> amps(N * D * 2, cplx{0.0, 0.0});
    for (std::size_t a = 0; a < N; ++a) amps[a * D * 2] = 1.0 / sqrt_n;
    for (std::size_t it = 0; it < j; ++it) {
      for (std::size_t a = 0; a < N; ++a) {
        std::vector<cplx> block(amps.begin() + a * D * 2, amps.begin() + (a + 1) * D * 2);
        marking_pass(block, D, stochastic_oracle.angle(a), t_min);
        std::copy(block.begin(), block.end(), amps.begin() + a * D * 2);
      }
      // Diffusion on the sequence register.
      std::size_t blk = D * 2;
      for (std::size_t r = 0; r < blk; ++r) {
        cplx sum{0.0, 0.0};
        for (std::size_t a = 0; a < N; ++a) sum += amps[a * blk + r];
        cplx twice_mean = 2.0 * sum / static_cast<double>(N);
        for (std::size_t a = 0; a < N; ++a) amps[a * blk + r] = twice_mean - amps[a * blk + r];
      }
    }
    markings += j;
    stochastic_oracle.charge_queries(j * (D - 1));
    double u = rng.uniform();
    double acc = 0.0;
    std::size_t candidate = N - 1;
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t r = 0; r < D * 2; ++r) acc += std::norm(amps[a * D * 2 + r]);
      if (u < acc) {
        candidate = a;
        break;
      }
    }
    double s = std::sin(stochastic_oracle.angle(candidate));
    if (s * s >= p_min) {
      out.found = candidate;
      out.success = true;
      break;
    }
    bound = std::min(bound * 1.2, sqrt_n);
  }
  out.oracle_queries = markings;
  out.interaction_steps = markings * (D - 1) * stochastic_oracle.epoch_length();
  return out;
}

double threshold_marking_ancilla_residual(const OracleHandle& stochastic_oracle, double p_min,
                                          std::size_t l) {
  check_estimator_dims(l);
  std::size_t N = stochastic_oracle.layout().dim(0);
  std::size_t D = std::size_t{1} << l;
  double theta_min = std::asin(std::sqrt(p_min));
  std::size_t t_min = static_cast<std::size_t>(
      std::ceil(theta_min * static_cast<double>(D) / kPi));
  double residual = 0.0;
  double inv_n = 1.0 / static_cast<double>(N);
  for (std::size_t a = 0; a < N; ++a) {
    std::vector<cplx> block(D * 2, cplx{0.0, 0.0});
    block[0] = 1.0;
    marking_pass(block, D, stochastic_oracle.angle(a), t_min);
    double w = 0.0;
    for (std::size_t f = 1; f < D; ++f) {
      w += std::norm(block[f * 2]) + std::norm(block[f * 2 + 1]);
    }
    residual += w * inv_n;
  }
  return residual;
}

}  // namespace qrl
