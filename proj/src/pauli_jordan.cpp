// SPDX-License-Identifier: Apache-2.0
#include "lcq/pauli_jordan.hpp"

#include <cmath>

#include "lcq/bessel.hpp"
#include "lcq/errors.hpp"

namespace lcq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kExteriorUnderflowArg = 700.0;  // exp(-700) ~ 1e-304

void validate(double mass, const IntervalPoint& p) {
  if (!(mass >= 0.0)) throw InvalidMassError("kernel mass must be >= 0");
  if (!std::isfinite(p.lambda2)) throw PreconditionError("lambda2 must be finite");
  if (p.x0_sign < -1 || p.x0_sign > 1) {
    throw PreconditionError("x0_sign must be in {-1, 0, +1}");
  }
}

}  // namespace

KernelValue dplus_parts(double mass, const IntervalPoint& p, int sign) {
  validate(mass, p);
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  if (p.lambda2 == 0.0) {
    throw OnConeError(
        "dplus_parts: smooth parts are undefined on the cone; the on-cone "
        "content is the eps(x0) delta(x^2) term with coefficient 1/(4pi)");
  }

  KernelValue kv;
  kv.sign = sign;
  kv.cone_delta_coeff = 1.0 / (4.0 * kPi);
  if (mass == 0.0) return kv;  // the Bessel terms carry a factor m

  if (p.lambda2 > 0.0) {
    const double root = std::sqrt(p.lambda2);
    const double s = mass * root;
    const double amp = mass / (8.0 * kPi * root);
    const double eps_j = p.x0_sign * bessel::j1(s);
    const double y = bessel::y1(s);
    kv.interior = {-amp * eps_j, -amp * static_cast<double>(sign) * y};
  } else {
    const double root = std::sqrt(-p.lambda2);
    const double s = mass * root;
    if (s > kExteriorUnderflowArg) {
      kv.exterior_underflow = true;
      return kv;
    }
    const double amp = mass / (4.0 * kPi * kPi * root);
    kv.exterior = {0.0, static_cast<double>(sign) * amp * bessel::k1(s)};
  }
  return kv;
}

KernelValue pauli_jordan_value(double mass, const IntervalPoint& p) {
  const KernelValue plus = dplus_parts(mass, p, +1);
  const KernelValue minus = dplus_parts(mass, p, -1);
  KernelValue sum;
  sum.sign = 0;
  sum.cone_delta_coeff = plus.cone_delta_coeff + minus.cone_delta_coeff;
  sum.interior = plus.interior + minus.interior;
  sum.exterior = plus.exterior + minus.exterior;
  sum.exterior_underflow = plus.exterior_underflow || minus.exterior_underflow;
  return sum;
}

double tail_asymptotic_ratio(double mass, double r) {
  if (mass == 0.0) {
    throw UndefinedAsymptoticError(
        "tail_asymptotic_ratio: the exterior tail vanishes identically at m = 0");
  }
  if (!(mass > 0.0)) throw InvalidMassError("kernel mass must be >= 0");
  if (!(r > 0.0)) throw PreconditionError("tail_asymptotic_ratio requires r > 0");
  // |exterior| = (m / (4 pi^2 r)) K1(m r); template C r^(-3/2) e^(-m r) with
  // C = (m / (4 pi^2)) sqrt(pi/(2m)). The scaled K1 keeps the ratio finite
  // far past the e^(-m r) underflow point.
  const double s = mass * r;
  return bessel::k1_scaled(s) * std::sqrt(2.0 * s / kPi);
}

KernelValue equal_time_kernel(double mass, double r) {
  if (!(mass >= 0.0)) throw InvalidMassError("kernel mass must be >= 0");
  if (!(r >= 0.0)) throw PreconditionError("equal_time_kernel requires r >= 0");
  KernelValue kv;
  kv.sign = +1;
  kv.cone_delta_coeff = -1.0 / (8.0 * kPi);  // multiplies delta(r)/r on the slice
  if (mass == 0.0 || r == 0.0) return kv;
  const double s = mass * r;
  if (s > kExteriorUnderflowArg) {
    kv.exterior_underflow = true;
    return kv;
  }
  const double amp = mass / (4.0 * kPi * kPi * r);
  kv.exterior = {0.0, amp * bessel::k1(s)};
  return kv;
}

}  // namespace lcq
