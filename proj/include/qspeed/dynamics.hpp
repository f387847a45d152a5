#pragma once

#include <string>

#include "qspeed/cmatrix.hpp"
#include "qspeed/states.hpp"

namespace qspeed {

enum class SpinAxis { X, Y, Z };

SpinAxis axis_from_name(const std::string& name);  // "x" | "y" | "z"
const char* axis_name(SpinAxis axis);

// Pauli matrix for the given axis.
CMatrix pauli(SpinAxis axis);

// Single-site spin-1/2 generator h = sigma/2.
CMatrix spin_half(SpinAxis axis);

// Additive (local) generator sum_k h_k on n sites, h acting on site k with
// identities elsewhere. h must be hermitian; n in [1, 10].
CMatrix additive_hamiltonian(const CMatrix& h, int n);

// exp(-i H tau) via the spectral decomposition of hermitian H.
CMatrix unitary_of(const CMatrix& H, double tau);

// U rho U^dagger; validates unitarity of U.
DensityMatrix evolve(const DensityMatrix& rho, const CMatrix& U,
                     const Tolerances& tol = default_tolerances());

}  // namespace qspeed
