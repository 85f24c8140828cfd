// SPDX-License-Identifier: Apache-2.0
#include "lcq/polarization.hpp"

#include <cmath>

#include "lcq/errors.hpp"

namespace lcq {

namespace {

PolarizationBasis assemble(const Vec3& e1, const Vec3& e2) {
  PolarizationBasis b;
  b.e1 = e1;
  b.e2 = e2;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> i{0.0, 1.0};
  b.w_plus = {(e1.x + i * e2.x) * inv_sqrt2, (e1.y + i * e2.y) * inv_sqrt2,
              (e1.z + i * e2.z) * inv_sqrt2};
  b.w_minus = {(e1.x - i * e2.x) * inv_sqrt2, (e1.y - i * e2.y) * inv_sqrt2,
               (e1.z - i * e2.z) * inv_sqrt2};
  return b;
}

}  // namespace

PolarizationBasis photon_polarization_basis(const Vec3& k, PhotonFrame frame) {
  const double kn = k.norm();
  if (!(kn > 0.0)) {
    throw UndefinedDirectionError("polarization basis undefined at k = 0");
  }
  const Vec3 khat = k / kn;

  if (frame == PhotonFrame::spherical) {
    const double s = std::hypot(khat.x, khat.y);
    if (s < 1e-14) {
      throw UndefinedDirectionError("spherical frame singular on the z axis");
    }
    const double cphi = khat.x / s, sphi = khat.y / s;
    const double cth = khat.z;
    const Vec3 e_theta{cth * cphi, cth * sphi, -s};
    const Vec3 e_phi{-sphi, cphi, 0.0};
    return assemble(e_theta, e_phi);
  }

  // min_axis frame: strictly smallest component wins, ties go to x then y
  const double ax = std::abs(khat.x), ay = std::abs(khat.y), az = std::abs(khat.z);
  Vec3 m{1.0, 0.0, 0.0};
  double best = ax;
  if (ay < best) {
    best = ay;
    m = {0.0, 1.0, 0.0};
  }
  if (az < best) m = {0.0, 0.0, 1.0};
  const Vec3 e2 = khat.cross(m).normalized();
  const Vec3 e1 = e2.cross(khat);
  return assemble(e1, e2);
}

}  // namespace lcq
