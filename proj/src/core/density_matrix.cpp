#include "qrl/core/density_matrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "qrl/core/constants.hpp"

namespace qrl {

DensityMatrix::DensityMatrix(RegisterLayout layout)
    : layout_(std::move(layout)), m_(layout_.total_dim() * layout_.total_dim(), cplx{0, 0}) {
  m_[0] = 1.0;
}

DensityMatrix::DensityMatrix(RegisterLayout layout, std::vector<cplx> matrix)
    : layout_(std::move(layout)), m_(std::move(matrix)) {
  if (m_.size() != layout_.total_dim() * layout_.total_dim()) {
    throw LayoutError("density matrix size mismatch");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  std::size_t n = psi.dim();
  std::vector<cplx> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = psi.amp(i) * std::conj(psi.amp(j));
  }
  return DensityMatrix(psi.layout(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(RegisterLayout layout) {
  std::size_t n = layout.total_dim();
  std::vector<cplx> m(n * n, cplx{0, 0});
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0 / static_cast<double>(n);
  return DensityMatrix(std::move(layout), std::move(m));
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += at(i, i).real();
  return t;
}

bool DensityMatrix::is_hermitian(double tolerance) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i; j < dim(); ++j) {
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tolerance) return false;
    }
  }
  return true;
}

void DensityMatrix::validate() const {
  if (!is_hermitian(tol::state_norm)) throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(trace_real() - 1.0) > tol::state_norm) {
    throw std::invalid_argument("density matrix trace != 1");
  }
  std::size_t n = dim();
  Eigen::MatrixXcd em(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) em(i, j) = at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::state_norm) {
    throw std::invalid_argument("density matrix has negative eigenvalue");
  }
}

void DensityMatrix::accumulate(const DensityMatrix& other, double weight) {
  if (!(layout_ == other.layout_)) throw LayoutError("accumulate: layout mismatch");
  for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += weight * other.m_[i];
}

void DensityMatrix::scale(double factor) {
  for (auto& v : m_) v *= factor;
}

DensityMatrix DensityMatrix::partial_trace(const std::vector<std::size_t>& keep) const {
  if (keep.empty()) throw LayoutError("partial_trace: empty keep list");
  std::vector<bool> kept(layout_.num_registers(), false);
  for (auto r : keep) {
    if (r >= layout_.num_registers()) throw LayoutError("partial_trace: register out of range");
    kept[r] = true;
  }
  std::vector<std::size_t> keep_dims, traced;
  for (auto r : keep) keep_dims.push_back(layout_.dim(r));
  for (std::size_t r = 0; r < layout_.num_registers(); ++r) {
    if (!kept[r]) traced.push_back(r);
  }
  RegisterLayout out_layout(keep_dims);
  std::size_t n_out = out_layout.total_dim();
  std::vector<cplx> out(n_out * n_out, cplx{0, 0});

  std::size_t n_traced = 1;
  for (auto r : traced) n_traced *= layout_.dim(r);

  // For each kept-index pair (i', j') and traced configuration k, sum the
  // corresponding full-matrix element.
  auto full_index = [&](std::size_t kept_flat, std::size_t traced_flat) {
    std::size_t flat = 0;
    std::size_t kf = kept_flat;
    for (std::size_t j = keep.size(); j-- > 0;) {
      flat += (kf % layout_.dim(keep[j])) * layout_.stride(keep[j]);
      kf /= layout_.dim(keep[j]);
    }
    std::size_t tf = traced_flat;
    for (std::size_t j = traced.size(); j-- > 0;) {
      flat += (tf % layout_.dim(traced[j])) * layout_.stride(traced[j]);
      tf /= layout_.dim(traced[j]);
    }
    return flat;
  };

  for (std::size_t i = 0; i < n_out; ++i) {
    for (std::size_t j = 0; j < n_out; ++j) {
      cplx s{0, 0};
      for (std::size_t k = 0; k < n_traced; ++k) {
        s += m_[full_index(i, k) * dim() + full_index(j, k)];
      }
      out[i * n_out + j] = s;
    }
  }
  return DensityMatrix(std::move(out_layout), std::move(out));
}

DensityMatrix DensityMatrix::dephase(std::size_t reg) const {
  if (reg >= layout_.num_registers()) throw LayoutError("dephase: register out of range");
  DensityMatrix out(layout_, std::vector<cplx>(m_.size(), cplx{0, 0}));
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (layout_.extract(i, reg) == layout_.extract(j, reg)) out.at(i, j) = at(i, j);
    }
  }
  return out;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.layout() == sigma.layout())) throw LayoutError("trace_distance: layout mismatch");
  std::size_t n = rho.dim();
  Eigen::MatrixXcd d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = rho.at(i, j) - sigma.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    sum += std::abs(solver.eigenvalues()[i]);
  }
  return 0.5 * sum;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  RegisterLayout layout(dims);
  std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  std::vector<cplx> m(n * n);
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ja = 0; ja < na; ++ja)
      for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t jb = 0; jb < nb; ++jb)
          m[(ia * nb + ib) * n + (ja * nb + jb)] = a.at(ia, ja) * b.at(ib, jb);
  return DensityMatrix(std::move(layout), std::move(m));
}

}  // namespace qrl
