#include "qrl/core/unitary.hpp"

#include <cmath>
#include <stdexcept>

#include "qrl/core/constants.hpp"

namespace qrl {

UnitaryOp::UnitaryOp(std::vector<std::size_t> target_registers,
                     std::vector<std::size_t> target_dims, std::vector<cplx> matrix)
    : targets_(std::move(target_registers)), dims_(std::move(target_dims)), m_(std::move(matrix)) {
  if (targets_.size() != dims_.size()) throw LayoutError("unitary: target/dim arity mismatch");
  dim_ = 1;
  for (auto d : dims_) dim_ *= d;
  if (m_.size() != dim_ * dim_) throw LayoutError("unitary: matrix size mismatch");
}

UnitaryOp UnitaryOp::identity(std::vector<std::size_t> targets, std::vector<std::size_t> dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<cplx> m(n * n, cplx{0, 0});
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return UnitaryOp(std::move(targets), std::move(dims), std::move(m));
}

UnitaryOp UnitaryOp::permutation(std::vector<std::size_t> targets, std::vector<std::size_t> dims,
                                 const std::vector<std::size_t>& perm) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  if (perm.size() != n) throw LayoutError("permutation: size mismatch");
  std::vector<cplx> m(n * n, cplx{0, 0});
  for (std::size_t i = 0; i < n; ++i) m[perm[i] * n + i] = 1.0;
  return UnitaryOp(std::move(targets), std::move(dims), std::move(m));
}

UnitaryOp UnitaryOp::diagonal(std::vector<std::size_t> targets, std::vector<std::size_t> dims,
                              const std::vector<cplx>& phases) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  if (phases.size() != n) throw LayoutError("diagonal: size mismatch");
  std::vector<cplx> m(n * n, cplx{0, 0});
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = phases[i];
  return UnitaryOp(std::move(targets), std::move(dims), std::move(m));
}

bool UnitaryOp::is_unitary(double tolerance) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      cplx s{0, 0};
      for (std::size_t k = 0; k < dim_; ++k) s += at(i, k) * std::conj(at(j, k));
      cplx expect = (i == j) ? cplx{1, 0} : cplx{0, 0};
      if (std::abs(s - expect) > tolerance) return false;
    }
  }
  return true;
}

double UnitaryOp::self_inverse_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      cplx s{0, 0};
      for (std::size_t k = 0; k < dim_; ++k) s += at(i, k) * at(k, j);
      cplx expect = (i == j) ? cplx{1, 0} : cplx{0, 0};
      worst = std::max(worst, std::abs(s - expect));
    }
  }
  return worst;
}

UnitaryOp UnitaryOp::adjoint() const {
  std::vector<cplx> m(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m[i * dim_ + j] = std::conj(at(j, i));
  return UnitaryOp(targets_, dims_, std::move(m));
}

UnitaryOp UnitaryOp::compose(const UnitaryOp& other) const {
  if (dims_ != other.dims_ || targets_ != other.targets_) {
    throw LayoutError("compose: operand mismatch");
  }
  std::vector<cplx> m(dim_ * dim_, cplx{0, 0});
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      cplx aik = at(i, k);
      if (aik == cplx{0, 0}) continue;
      for (std::size_t j = 0; j < dim_; ++j) m[i * dim_ + j] += aik * other.at(k, j);
    }
  return UnitaryOp(targets_, dims_, std::move(m));
}

UnitaryOp UnitaryOp::retarget(std::vector<std::size_t> new_targets) const {
  return UnitaryOp(std::move(new_targets), dims_, m_);
}

void UnitaryOp::check_layout(const RegisterLayout& layout) const {
  for (std::size_t j = 0; j < targets_.size(); ++j) {
    if (targets_[j] >= layout.num_registers()) {
      throw LayoutError("unitary target register out of range");
    }
    if (layout.dim(targets_[j]) != dims_[j]) {
      throw LayoutError("unitary target dimension mismatch");
    }
  }
}

StateVector UnitaryOp::apply(const StateVector& state) const {
  const RegisterLayout& layout = state.layout();
  check_layout(layout);
  std::size_t total = layout.total_dim();

  // Flat offset of each target configuration within the full index.
  std::vector<std::size_t> offsets(dim_, 0);
  for (std::size_t t = 0; t < dim_; ++t) {
    std::size_t rem = t;
    for (std::size_t j = targets_.size(); j-- > 0;) {
      offsets[t] += (rem % dims_[j]) * layout.stride(targets_[j]);
      rem /= dims_[j];
    }
  }

  std::vector<cplx> out(total, cplx{0, 0});
  std::vector<bool> is_target(layout.num_registers(), false);
  for (auto r : targets_) is_target[r] = true;

  // Enumerate context configurations by walking all flat indices whose target
  // registers are zero.
  std::vector<cplx> in_block(dim_);
  for (std::size_t base = 0; base < total; ++base) {
    bool context = true;
    for (auto r : targets_) {
      if (layout.extract(base, r) != 0) {
        context = false;
        break;
      }
    }
    if (!context) continue;
    for (std::size_t t = 0; t < dim_; ++t) in_block[t] = state.amp(base + offsets[t]);
    for (std::size_t i = 0; i < dim_; ++i) {
      cplx s{0, 0};
      for (std::size_t k = 0; k < dim_; ++k) s += at(i, k) * in_block[k];
      out[base + offsets[i]] = s;
    }
  }
  return StateVector(layout, std::move(out));
}

DensityMatrix UnitaryOp::apply(const DensityMatrix& rho) const {
  const RegisterLayout& layout = rho.layout();
  check_layout(layout);
  std::size_t n = layout.total_dim();

  std::vector<std::size_t> offsets(dim_, 0);
  for (std::size_t t = 0; t < dim_; ++t) {
    std::size_t rem = t;
    for (std::size_t j = targets_.size(); j-- > 0;) {
      offsets[t] += (rem % dims_[j]) * layout.stride(targets_[j]);
      rem /= dims_[j];
    }
  }
  auto context_base = [&](std::size_t flat) {
    std::size_t base = flat;
    for (std::size_t j = 0; j < targets_.size(); ++j) {
      base -= layout.extract(flat, targets_[j]) * layout.stride(targets_[j]);
    }
    return base;
  };

  // Left multiply: out = U rho.
  std::vector<cplx> tmp(n * n, cplx{0, 0});
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t base = 0; base < n; ++base) {
      if (context_base(base) != base) continue;
      for (std::size_t i = 0; i < dim_; ++i) {
        cplx s{0, 0};
        for (std::size_t k = 0; k < dim_; ++k) {
          s += at(i, k) * rho.at(base + offsets[k], col);
        }
        tmp[(base + offsets[i]) * n + col] = s;
      }
    }
  }
  // Right multiply: out = tmp U^dag.
  std::vector<cplx> out(n * n, cplx{0, 0});
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t base = 0; base < n; ++base) {
      if (context_base(base) != base) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        cplx s{0, 0};
        for (std::size_t k = 0; k < dim_; ++k) {
          s += tmp[row * n + base + offsets[k]] * std::conj(at(j, k));
        }
        out[row * n + base + offsets[j]] = s;
      }
    }
  }
  return DensityMatrix(layout, std::move(out));
}

}  // namespace qrl
