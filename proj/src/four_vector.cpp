// SPDX-License-Identifier: Apache-2.0
#include "lcq/four_vector.hpp"

#include <cmath>

#include "lcq/errors.hpp"

namespace lcq {

double interval(const FourVector& v) {
  return v.t * v.t - (v.x * v.x + v.y * v.y + v.z * v.z);
}

FourVector boost_rapidity(const FourVector& event, double psi, Axis axis) {
  const double ch = std::cosh(psi);
  const double sh = std::sinh(psi);
  FourVector out = event;
  double* comp = nullptr;
  switch (axis) {
    case Axis::X: comp = &out.x; break;
    case Axis::Y: comp = &out.y; break;
    case Axis::Z: comp = &out.z; break;
  }
  const double xi = *comp;
  *comp = ch * xi + sh * event.t;
  out.t = sh * xi + ch * event.t;
  return out;
}

FourVector lorentz_boost(const FourVector& event, double beta, Axis axis) {
  if (!(std::abs(beta) < 1.0)) {
    throw SuperluminalError("lorentz_boost: |beta| must be < 1, got " + std::to_string(beta));
  }
  return boost_rapidity(event, std::atanh(beta), axis);
}

double boosted_segment_extent(double x_left, double x_right, double beta) {
  if (!(std::abs(beta) < 1.0)) {
    throw SuperluminalError("boosted_segment_extent: |beta| must be < 1");
  }
  // Worldtube {(t, x) : x in [x_left, x_right]} cut by the slice t' = 0.
  // A worldline x = x0 crosses the slice at t = -beta*x0, which maps to
  // x' = (x0 + beta*t) / sqrt(1-beta^2) = x0*sqrt(1-beta^2).
  const double psi = std::atanh(beta);
  const auto cross = [&](double x0) {
    const FourVector on_slice{-beta * x0, x0, 0.0, 0.0};
    return boost_rapidity(on_slice, psi).x;
  };
  return std::abs(cross(x_right) - cross(x_left));
}

}  // namespace lcq
