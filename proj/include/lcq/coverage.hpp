// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcq/enclosing_ball.hpp"
#include "lcq/four_vector.hpp"
#include "lcq/vec3.hpp"

namespace lcq {

struct BallShape {
  Vec3 center;
  double radius = 0.0;
};

struct Interval1D {
  double x_left = 0.0;
  double x_right = 0.0;  // along the x axis
};

using PointCloud = std::vector<Vec3>;

/// Spatial region holding all but a fraction eps of a state's localization
/// mass; the computable stand-in for "where the state is present".
struct SpatialSupport {
  std::variant<BallShape, Interval1D, PointCloud> shape;
  double eps = 0.0;  // tail threshold defining the support (0 = exact input)

  static SpatialSupport ball(const Vec3& center, double radius, double eps = 0.0);
  static SpatialSupport interval(double x_left, double x_right, double eps = 0.0);
  static SpatialSupport points(PointCloud cloud, double eps = 0.0);
};

/// Minimum-coverage answer: the past light cone of (observer, t_min) covers
/// the support, with certificate points realizing the max distance.
struct CoverageResult {
  double t_min = 0.0;
  Vec3 observer;
  std::vector<Vec3> certificate;
  double eps = 0.0;
  /// Half the support diameter: the looser "maximum cross-section" reading
  /// of the 3D minimum time; equals t_min only for symmetric supports.
  double half_max_extent = 0.0;
};

/// Free observer: minimum enclosing ball (center = optimal observer).
/// Fixed observer: max distance from the observer to the support.
CoverageResult coverage_time(const SpatialSupport& support,
                             const std::optional<Vec3>& observer = std::nullopt);

/// The 1D frame-invariance check: a segment of length L needs t' =
/// L sqrt(1-beta^2) / 2 in the boosted frame, which dilates back to the
/// invariant t = L/2 in the original frame.
struct FrameElapsed {
  double t_prime = 0.0;
  double t_original = 0.0;
};
FrameElapsed frame_elapsed_time_check(double length, double beta);

std::string coverage_result_json(const CoverageResult& result);

}  // namespace lcq
