// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>

#include "lcq/vec3.hpp"

namespace lcq {

using Mat4 = std::array<std::array<std::complex<double>, 4>, 4>;
using Spinor = std::array<std::complex<double>, 4>;

/// Gamma matrices in the standard Dirac representation, signature (+,-,-,-):
/// gamma0 = diag(1,1,-1,-1), gamma^i off-diagonal Pauli blocks. The Dirac
/// adjoint throughout is u~ = u^dagger gamma0.
namespace dirac {

const Mat4& gamma0();
const Mat4& gamma(int i);  // i = 1..3

/// Feynman slash of the on-shell four-momentum (eps(p), p):
/// p0*gamma0 - p.gamma.
Mat4 slash_onshell(const Vec3& p, double mass);

/// Positive-energy spinor u^(+)_zeta(p), zeta = +1 for spin up (+1/2) and
/// -1 for spin down (-1/2), normalized so that u~ u = 1 and
/// 2 sum_zeta u u~ = slash(p)/m + 1. Throws InvalidMassError for m <= 0.
Spinor u_plus(const Vec3& p, int zeta_sign, double mass);

/// Negative-energy spinor with 2 sum_zeta u u~ = slash(p)/m - 1.
Spinor u_minus(const Vec3& p, int zeta_sign, double mass);

Spinor adjoint(const Spinor& u);  // u^dagger gamma0 as a row (stored as Spinor)

/// Max-norm residual of 2 sum_zeta u^(s) u~^(s) - (slash(p)/m + s*1).
double completeness_residual(const Vec3& p, double mass, int energy_sign);

/// gamma0 (slash(p) + m) / (2 eps(p)): the Hermitian positive-semidefinite
/// kernel of the positive-energy mass-shell form.
Mat4 positive_energy_kernel(const Vec3& p, double mass);

}  // namespace dirac
}  // namespace lcq
