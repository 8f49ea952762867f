#include "qrl/core/register_layout.hpp"

#include "qrl/core/constants.hpp"

namespace qrl {

RegisterLayout::RegisterLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw LayoutError("layout needs at least one register");
  for (auto d : dims_) {
    if (d < 1) throw LayoutError("register dimension must be >= 1");
  }
  strides_.assign(dims_.size(), 1);
  total_ = 1;
  for (std::size_t r = dims_.size(); r-- > 0;) {
    strides_[r] = total_;
    if (total_ > kDenseDimCap / dims_[r] && dims_[r] > 1) {
      throw ResourceError("layout exceeds dense dimension cap of " +
                          std::to_string(kDenseDimCap));
    }
    total_ *= dims_[r];
  }
}

std::size_t RegisterLayout::flatten(const std::vector<std::size_t>& idx) const {
  if (idx.size() != dims_.size()) throw LayoutError("index arity mismatch");
  std::size_t flat = 0;
  for (std::size_t r = 0; r < dims_.size(); ++r) {
    if (idx[r] >= dims_[r]) throw LayoutError("register index out of range");
    flat += idx[r] * strides_[r];
  }
  return flat;
}

std::vector<std::size_t> RegisterLayout::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(dims_.size());
  for (std::size_t r = 0; r < dims_.size(); ++r) idx[r] = extract(flat, r);
  return idx;
}

}  // namespace qrl
