// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace lcq {

/// Spacetime separation reduced to the invariants the kernels depend on:
/// lambda2 = interval, x0_sign = sign of the time component.
struct IntervalPoint {
  double lambda2 = 0.0;
  int x0_sign = +1;  // in {-1, 0, +1}
};

/// Three-part decomposition of the commutator function at a point. The
/// distributional cone term is never evaluated pointwise: cone_delta_coeff
/// multiplies the symbol eps(x0) delta(x^2) (or delta(r)/r for the
/// equal-time slice) and is consumed analytically downstream.
struct KernelValue {
  double cone_delta_coeff = 0.0;
  std::complex<double> interior{0.0, 0.0};  // theta(lambda2) part, J1/Y1
  std::complex<double> exterior{0.0, 0.0};  // theta(-lambda2) part, K1 tail
  int sign = +1;                            // +1, -1, or 0 for the summed kernel
  bool exterior_underflow = false;          // m*r > 700 guard fired
};

/// Positive / negative frequency parts D^(+-)_m off the cone:
///   cone:      (1/4pi) eps(x0) delta(x^2)
///   interior:  -(m / (8 pi sqrt(l2))) (eps(x0) J1(m sqrt(l2)) +- i Y1(...))
///   exterior:  +- i (m / (4 pi^2 sqrt(-l2))) K1(m sqrt(-l2))
/// Throws OnConeError at lambda2 == 0 (the on-cone content is the delta
/// coefficient), InvalidMassError for m < 0.
KernelValue dplus_parts(double mass, const IntervalPoint& p, int sign);

/// Componentwise D^+ + D^-; the spacelike exterior parts cancel exactly and
/// the summed kernel is real (microcausality in numeric form).
KernelValue pauli_jordan_value(double mass, const IntervalPoint& p);

/// |exterior| divided by the leading-order tail template C r^(-3/2)
/// exp(-m r), C fixed from the K1 asymptotic; tends to 1 as m r grows.
/// Throws UndefinedAsymptoticError for m == 0.
double tail_asymptotic_ratio(double mass, double r);

/// Equal-time slice kernel: pure contact structure with coefficient
/// -1/(8 pi) on the symbol delta(r)/r, plus (for m > 0, r > 0) the K1
/// exterior tail at lambda2 = -r^2. Exterior flushes to exact zero with
/// the underflow flag set once m r > 700.
KernelValue equal_time_kernel(double mass, double r);

}  // namespace lcq
