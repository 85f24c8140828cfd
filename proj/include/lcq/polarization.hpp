// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>

#include "lcq/vec3.hpp"

namespace lcq {

using CVec3 = std::array<std::complex<double>, 3>;

struct PolarizationBasis {
  Vec3 e1;
  Vec3 e2;
  CVec3 w_plus;   // (e1 + i e2)/sqrt(2)
  CVec3 w_minus;  // (e1 - i e2)/sqrt(2)
};

enum class PhotonFrame {
  /// e2 = normalize(k x m), e1 = e2 x k, with m the coordinate axis of
  /// smallest |k . axis| (ties broken in x, y, z order). Deterministic;
  /// discontinuous on the component-tie planes |k_i| = |k_j|, which play
  /// the role of the singular axis of this convention. Gives
  /// w_plus(z) = (x + i y)/sqrt(2).
  min_axis,
  /// Spherical frame e1 = e_theta, e2 = e_phi: equivariant under rotations
  /// about z, singular only at k || +-z. Used by the localization
  /// transforms where that equivariance matters.
  spherical,
};

/// Transverse helicity basis at photon momentum k != 0.
/// Throws UndefinedDirectionError at k = 0 (and, for the spherical frame,
/// on its polar axis).
PolarizationBasis photon_polarization_basis(const Vec3& k,
                                            PhotonFrame frame = PhotonFrame::min_axis);

}  // namespace lcq
