#pragma once

#include <complex>
#include <vector>

#include "qrl/core/register_layout.hpp"
#include "qrl/core/rng.hpp"

namespace qrl {

using cplx = std::complex<double>;

struct MeasurementResult;

// Pure state over a register layout. Immutable in spirit: operations return
// new values rather than mutating in place.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(RegisterLayout layout);
  // Basis state with given flat index.
  StateVector(RegisterLayout layout, std::size_t basis_index);
  // Explicit amplitudes; checked for normalization.
  StateVector(RegisterLayout layout, std::vector<cplx> amplitudes);

  static StateVector uniform(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amp(std::size_t i) const { return amps_[i]; }

  double norm_sq() const;

  // Born-rule measurement of the given registers.
  MeasurementResult measure(const std::vector<std::size_t>& registers, Rng& rng) const;
  // Forced-outcome collapse; throws on a zero-probability branch.
  MeasurementResult collapse(const std::vector<std::size_t>& registers,
                             const std::vector<std::size_t>& outcome) const;

  // |<a|b>|
  double overlap(const StateVector& other) const;

  std::vector<cplx>& mutable_amplitudes() { return amps_; }

 private:
  RegisterLayout layout_;
  std::vector<cplx> amps_;
};

struct MeasurementResult {
  std::vector<std::size_t> outcome;  // one index per measured register
  StateVector collapsed;
  double probability = 0.0;
};

StateVector tensor(const StateVector& a, const StateVector& b);

}  // namespace qrl
