#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qrl/core/density_matrix.hpp"
#include "qrl/core/register_layout.hpp"
#include "qrl/core/state_vector.hpp"

namespace qrl {

// Dense unitary acting on a subset of registers, in the order listed. The
// matrix is square over the product of the target dimensions, row-major.
class UnitaryOp {
 public:
  UnitaryOp(std::vector<std::size_t> target_registers, std::vector<std::size_t> target_dims,
            std::vector<cplx> matrix);

  static UnitaryOp identity(std::vector<std::size_t> targets, std::vector<std::size_t> dims);
  // Basis permutation |i> -> |perm(i)>.
  static UnitaryOp permutation(std::vector<std::size_t> targets, std::vector<std::size_t> dims,
                               const std::vector<std::size_t>& perm);
  static UnitaryOp diagonal(std::vector<std::size_t> targets, std::vector<std::size_t> dims,
                            const std::vector<cplx>& phases);

  const std::vector<std::size_t>& targets() const { return targets_; }
  const std::vector<std::size_t>& target_dims() const { return dims_; }
  std::size_t dim() const { return dim_; }
  const std::vector<cplx>& matrix() const { return m_; }
  cplx at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }

  bool is_unitary(double tolerance) const;
  // Max deviation of U*U from identity.
  double self_inverse_defect() const;

  UnitaryOp adjoint() const;
  // this * other (apply other first); targets must match.
  UnitaryOp compose(const UnitaryOp& other) const;

  StateVector apply(const StateVector& state) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

  // Retarget the same matrix onto different register indices.
  UnitaryOp retarget(std::vector<std::size_t> new_targets) const;

 private:
  void check_layout(const RegisterLayout& layout) const;

  std::vector<std::size_t> targets_;
  std::vector<std::size_t> dims_;
  std::size_t dim_;
  std::vector<cplx> m_;
};

}  // namespace qrl
