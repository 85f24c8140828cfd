// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace lcq {

/// Eigenvalues (ascending) of an n x n complex Hermitian matrix given
/// row-major. Cyclic Jacobi on the real symmetric embedding; fine for the
/// small Gram matrices this library produces.
std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& a, int n);

}  // namespace lcq
