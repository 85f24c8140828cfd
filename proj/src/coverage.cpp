// SPDX-License-Identifier: Apache-2.0
#include "lcq/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "lcq/errors.hpp"
#include "lcq/report_io.hpp"

namespace lcq {

SpatialSupport SpatialSupport::ball(const Vec3& center, double radius, double eps) {
  if (!(radius >= 0.0)) throw PreconditionError("support ball radius must be >= 0");
  SpatialSupport s;
  s.shape = BallShape{center, radius};
  s.eps = eps;
  return s;
}

SpatialSupport SpatialSupport::interval(double x_left, double x_right, double eps) {
  if (!(x_left <= x_right)) {
    throw PreconditionError("support interval requires x_left <= x_right");
  }
  SpatialSupport s;
  s.shape = Interval1D{x_left, x_right};
  s.eps = eps;
  return s;
}

SpatialSupport SpatialSupport::points(PointCloud cloud, double eps) {
  if (cloud.empty()) throw EmptySupportError("support point cloud is empty");
  for (const Vec3& p : cloud) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw PreconditionError("support points must be finite");
    }
  }
  SpatialSupport s;
  s.shape = std::move(cloud);
  s.eps = eps;
  return s;
}

namespace {

CoverageResult cover_ball(const BallShape& b,
                          const std::optional<Vec3>& observer) {
  CoverageResult res;
  if (!observer) {
    res.observer = b.center;
    res.t_min = b.radius;
    res.certificate = {b.center + Vec3{b.radius, 0.0, 0.0},
                       b.center - Vec3{b.radius, 0.0, 0.0}};
  } else {
    res.observer = *observer;
    const Vec3 d = b.center - *observer;
    const double dist = d.norm();
    res.t_min = dist + b.radius;
    const Vec3 dir = dist > 0.0 ? d / dist : Vec3{1.0, 0.0, 0.0};
    res.certificate = {b.center + dir * b.radius};
  }
  res.half_max_extent = b.radius;
  return res;
}

CoverageResult cover_interval(const Interval1D& seg,
                              const std::optional<Vec3>& observer) {
  const Vec3 left{seg.x_left, 0.0, 0.0};
  const Vec3 right{seg.x_right, 0.0, 0.0};
  CoverageResult res;
  res.half_max_extent = 0.5 * (seg.x_right - seg.x_left);
  if (!observer) {
    res.observer = {0.5 * (seg.x_left + seg.x_right), 0.0, 0.0};
    res.t_min = res.half_max_extent;
    res.certificate = {left, right};
    return res;
  }
  res.observer = *observer;
  const double dl = (left - *observer).norm();
  const double dr = (right - *observer).norm();
  res.t_min = std::max(dl, dr);
  res.certificate = {dl >= dr ? left : right};
  return res;
}

CoverageResult cover_points(const PointCloud& pts,
                            const std::optional<Vec3>& observer) {
  CoverageResult res;
  double diam2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      diam2 = std::max(diam2, (pts[i] - pts[j]).norm2());
    }
  }
  res.half_max_extent = 0.5 * std::sqrt(diam2);
  if (!observer) {
    const Ball ball = min_enclosing_ball(pts);
    res.observer = ball.center;
    res.t_min = ball.radius;
    res.certificate = ball.support;
    return res;
  }
  res.observer = *observer;
  double best = -1.0;
  for (const Vec3& p : pts) {
    const double d = (p - *observer).norm();
    if (d > best + 1e-15) {
      best = d;
      res.certificate = {p};
    } else if (std::abs(d - best) <= 1e-12 * (1.0 + best)) {
      res.certificate.push_back(p);
    }
  }
  res.t_min = std::max(best, 0.0);
  return res;
}

}  // namespace

CoverageResult coverage_time(const SpatialSupport& support,
                             const std::optional<Vec3>& observer) {
  CoverageResult res = std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, BallShape>) {
          return cover_ball(shape, observer);
        } else if constexpr (std::is_same_v<T, Interval1D>) {
          return cover_interval(shape, observer);
        } else {
          return cover_points(shape, observer);
        }
      },
      support.shape);
  res.eps = support.eps;
  return res;
}

FrameElapsed frame_elapsed_time_check(double length, double beta) {
  if (!(length > 0.0)) throw PreconditionError("frame check requires L > 0");
  if (!(std::abs(beta) < 1.0)) {
    throw SuperluminalError("frame_elapsed_time_check: |beta| must be < 1");
  }
  FrameElapsed out;
  // contracted extent via the boost geometry, halved for the centered
  // observer; time dilation maps it back to the original frame
  const double contracted = boosted_segment_extent(0.0, length, beta);
  out.t_prime = 0.5 * contracted;
  out.t_original = out.t_prime / std::sqrt(1.0 - beta * beta);
  return out;
}

std::string coverage_result_json(const CoverageResult& result) {
  JsonWriter w;
  w.begin_object();
  w.field("t_min", result.t_min);
  w.begin_array("observer");
  w.value(result.observer.x).value(result.observer.y).value(result.observer.z);
  w.end_array();
  w.begin_array("certificate");
  for (const Vec3& p : result.certificate) {
    w.begin_array();
    w.value(p.x).value(p.y).value(p.z);
    w.end_array();
  }
  w.end_array();
  w.field("eps", result.eps);
  w.field("half_max_extent", result.half_max_extent);
  w.end_object();
  return w.str();
}

}  // namespace lcq
