#include "qrl/core/state_vector.hpp"

#include <cmath>
#include <stdexcept>

#include "qrl/core/constants.hpp"

namespace qrl {

StateVector::StateVector(RegisterLayout layout)
    : layout_(std::move(layout)), amps_(layout_.total_dim(), cplx{0.0, 0.0}) {
  amps_[0] = 1.0;
}

StateVector::StateVector(RegisterLayout layout, std::size_t basis_index)
    : layout_(std::move(layout)), amps_(layout_.total_dim(), cplx{0.0, 0.0}) {
  if (basis_index >= amps_.size()) throw LayoutError("basis index out of range");
  amps_[basis_index] = 1.0;
}

StateVector::StateVector(RegisterLayout layout, std::vector<cplx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.total_dim()) throw LayoutError("amplitude length mismatch");
  if (std::abs(norm_sq() - 1.0) > 1e-8) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::uniform(RegisterLayout layout) {
  std::size_t n = layout.total_dim();
  std::vector<cplx> amps(n, cplx{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  return StateVector(std::move(layout), std::move(amps));
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

namespace {

std::size_t project_flat(const RegisterLayout& layout, std::size_t flat,
                         const std::vector<std::size_t>& registers) {
  std::size_t key = 0;
  for (auto r : registers) key = key * layout.dim(r) + layout.extract(flat, r);
  return key;
}

}  // namespace

MeasurementResult StateVector::measure(const std::vector<std::size_t>& registers,
                                       Rng& rng) const {
  if (registers.empty()) throw LayoutError("measure: empty register list");
  std::size_t outcomes = 1;
  for (auto r : registers) {
    if (r >= layout_.num_registers()) throw LayoutError("measure: register out of range");
    outcomes *= layout_.dim(r);
  }
  std::vector<double> probs(outcomes, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    probs[project_flat(layout_, i, registers)] += std::norm(amps_[i]);
  }
  double u = rng.uniform();
  double acc = 0.0;
  std::size_t picked = outcomes - 1;
  for (std::size_t k = 0; k < outcomes; ++k) {
    acc += probs[k];
    if (u < acc) {
      picked = k;
      break;
    }
  }
  // Decode packed outcome key back to per-register indices.
  std::vector<std::size_t> outcome(registers.size());
  std::size_t key = picked;
  for (std::size_t j = registers.size(); j-- > 0;) {
    outcome[j] = key % layout_.dim(registers[j]);
    key /= layout_.dim(registers[j]);
  }
  auto result = collapse(registers, outcome);
  return result;
}

MeasurementResult StateVector::collapse(const std::vector<std::size_t>& registers,
                                        const std::vector<std::size_t>& outcome) const {
  if (registers.size() != outcome.size()) throw LayoutError("collapse: arity mismatch");
  std::size_t key = 0;
  for (std::size_t j = 0; j < registers.size(); ++j) {
    if (outcome[j] >= layout_.dim(registers[j])) throw LayoutError("collapse: bad outcome");
    key = key * layout_.dim(registers[j]) + outcome[j];
  }
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (project_flat(layout_, i, registers) == key) p += std::norm(amps_[i]);
  }
  if (p <= 0.0) throw std::invalid_argument("collapse onto zero-probability branch");
  std::vector<cplx> out(amps_.size(), cplx{0.0, 0.0});
  double inv = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (project_flat(layout_, i, registers) == key) out[i] = amps_[i] * inv;
  }
  return MeasurementResult{outcome, StateVector(layout_, std::move(out)), p};
}

double StateVector::overlap(const StateVector& other) const {
  if (!(layout_ == other.layout_)) throw LayoutError("overlap: layout mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return std::abs(s);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::size_t> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  RegisterLayout layout(dims);
  std::vector<cplx> amps;
  amps.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) amps.push_back(a.amp(i) * b.amp(j));
  }
  return StateVector(std::move(layout), std::move(amps));
}

}  // namespace qrl
