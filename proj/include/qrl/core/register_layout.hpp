#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrl {

struct LayoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered list of qudit register dimensions. Register 0 is the most
// significant in the flat basis index (kron ordering).
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<std::size_t> dims);

  std::size_t num_registers() const { return dims_.size(); }
  std::size_t dim(std::size_t r) const { return dims_.at(r); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  std::size_t stride(std::size_t r) const { return strides_.at(r); }

  // Flat index from per-register indices.
  std::size_t flatten(const std::vector<std::size_t>& idx) const;
  // Per-register indices from flat index.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  // Index of register r within flat index i.
  std::size_t extract(std::size_t flat, std::size_t r) const {
    return (flat / strides_[r]) % dims_[r];
  }

  bool operator==(const RegisterLayout& o) const { return dims_ == o.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

}  // namespace qrl
