// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcq/vec3.hpp"

namespace lcq {

enum class Axis { X, Y, Z };

/// Minkowski event in natural units (c = 1), signature (+,-,-,-).
struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr FourVector() = default;
  constexpr FourVector(double tt, double xx, double yy, double zz)
      : t(tt), x(xx), y(yy), z(zz) {}
  constexpr FourVector(double tt, const Vec3& r) : t(tt), x(r.x), y(r.y), z(r.z) {}

  constexpr Vec3 spatial() const { return {x, y, z}; }
  constexpr bool operator==(const FourVector& o) const = default;
};

/// Invariant interval t^2 - |x|^2.
double interval(const FourVector& v);

/// Hyperbolic rotation with rapidity psi = atanh(beta) along `axis`:
///   x' = cosh(psi) x + sinh(psi) t,  t' = sinh(psi) x + cosh(psi) t.
/// Throws SuperluminalError for |beta| >= 1.
FourVector lorentz_boost(const FourVector& event, double beta, Axis axis = Axis::X);

/// Same transform parametrized directly by rapidity (additive under
/// composition); used by the boost-composition checks.
FourVector boost_rapidity(const FourVector& event, double psi, Axis axis = Axis::X);

/// Width in the boosted frame of the static worldtube x in [x_left, x_right]
/// measured on a t' = const slice. Equals L*sqrt(1-beta^2).
double boosted_segment_extent(double x_left, double x_right, double beta);

}  // namespace lcq
