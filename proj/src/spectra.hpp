// SPDX-License-Identifier: Apache-2.0
//
// Hermitian eigenvalues via cyclic Jacobi rotations, and von Neumann
// entropy in bits.

#pragma once

#include <vector>

#include "tensor.hpp"

namespace crsp {

/// Eigenvalues of a Hermitian matrix, descending. Cyclic Jacobi with
/// off-diagonal Frobenius threshold 1e-12, at most 100 sweeps.
std::vector<double> hermitian_eigenvalues(const CMat& m);

std::vector<double> hermitian_eigenvalues(const DensityOperator& rho);

/// S(rho) = -sum_i p_i log2 p_i. Eigenvalues below 1e-12 contribute zero.
double von_neumann_entropy(const DensityOperator& rho);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

}  // namespace crsp
