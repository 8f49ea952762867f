#pragma once

#include <complex>
#include <vector>

#include "qrl/core/register_layout.hpp"
#include "qrl/core/state_vector.hpp"

namespace qrl {

// Dense density operator over a register layout, row-major storage.
class DensityMatrix {
 public:
  explicit DensityMatrix(RegisterLayout layout);  // |0...0><0...0|
  DensityMatrix(RegisterLayout layout, std::vector<cplx> matrix);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.total_dim(); }
  const std::vector<cplx>& matrix() const { return m_; }
  cplx at(std::size_t i, std::size_t j) const { return m_[i * dim() + j]; }
  cplx& at(std::size_t i, std::size_t j) { return m_[i * dim() + j]; }

  double trace_real() const;
  bool is_hermitian(double tolerance) const;
  // Checks Hermiticity, unit trace, and eigenvalue positivity.
  void validate() const;

  // Convex combination helper (used by ensemble evolution).
  void accumulate(const DensityMatrix& other, double weight);
  void scale(double factor);

  DensityMatrix partial_trace(const std::vector<std::size_t>& keep) const;

  // Dephase the given register in the classical basis (measure-and-forget).
  DensityMatrix dephase(std::size_t reg) const;

  // Probability weight of basis index i (diagonal entry).
  double diagonal_prob(std::size_t i) const { return at(i, i).real(); }

 private:
  RegisterLayout layout_;
  std::vector<cplx> m_;
};

// 0.5 * ||rho - sigma||_1, via Hermitian eigendecomposition.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qrl
