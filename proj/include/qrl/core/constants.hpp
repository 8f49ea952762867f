#pragma once

#include <cstddef>

namespace qrl {

// Central tolerance table. All numeric checks in the library reference these
// instead of scattering literals.
namespace tol {
inline constexpr double state_norm = 1e-10;       // state vector / density matrix checks
inline constexpr double unitarity = 1e-9;         // U U^dag = I
inline constexpr double self_inverse = 1e-9;      // U^2 = I for self-inverse oracles
inline constexpr double ancilla_clean = 1e-10;    // ancilla overlap with |0...0> after kick-back
inline constexpr double distribution = 1e-12;     // classical probability tables
}  // namespace tol

// Dense simulation cap: no register layout may exceed this total dimension.
inline constexpr std::size_t kDenseDimCap = std::size_t{1} << 14;

}  // namespace qrl
