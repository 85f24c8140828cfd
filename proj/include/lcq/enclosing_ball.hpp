// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lcq/vec3.hpp"

namespace lcq {

struct Ball {
  Vec3 center;
  double radius = 0.0;
  /// Points of the input defining the final ball (at most 4).
  std::vector<Vec3> support;
};

/// Smallest ball enclosing all points, by Welzl's move-to-front algorithm
/// with a fixed-seed shuffle (deterministic given the input order). Radius
/// accurate to ~1e-9 relative on well-scaled inputs. Throws
/// EmptySupportError on empty input.
Ball min_enclosing_ball(const std::vector<Vec3>& points, std::uint64_t shuffle_seed = 0x5eb
);

}  // namespace lcq
