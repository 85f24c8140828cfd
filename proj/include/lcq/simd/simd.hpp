// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace lcq::simd {

/// Table of the arithmetic inner-loop kernels. Each entry has a scalar
/// reference implementation and an AVX2 variant; the active lane is chosen
/// once at startup from CPUID and can be overridden with force_lane() or the
/// LIGHTCONE_QSD_SIMD environment variable ("scalar" | "avx2" | "auto").
/// The lanes are equivalence-tested against each other in the test suite.
struct Ops {
  const char* name;

  /// out[i] = exp(x[i])
  void (*exp_v)(const double* x, double* out, std::size_t n);

  /// s[i] = sin(x[i]), c[i] = cos(x[i]); |x| up to ~1e6 supported.
  void (*sincos_v)(const double* x, double* s, double* c, std::size_t n);

  /// sum_i w[i] * conj(a[i]) * b[i] over split re/im arrays.
  void (*conj_dot)(const double* w, const double* ar, const double* ai,
                   const double* br, const double* bi, std::size_t n,
                   double* re, double* im);

  /// sum_i wg[i] * j0(p[i]*r) * exp(-i t p0[i]) with j0(z) = sin(z)/z.
  /// The spherically reduced Fourier kernel behind position amplitudes.
  void (*radial_phase_sum)(const double* p, const double* p0, const double* wg,
                           std::size_t n, double r, double t, double* re,
                           double* im);
};

/// Active lane (runtime-selected).
const Ops& ops();

/// Scalar reference lane (always available).
const Ops& scalar_ops();

/// AVX2 lane, or nullptr when the CPU lacks AVX2+FMA.
const Ops* avx2_ops();

/// Override lane selection; "auto" restores CPU detection.
void force_lane(const char* name);

}  // namespace lcq::simd
