// SPDX-License-Identifier: Apache-2.0
#include "lcq/enclosing_ball.hpp"

#include <algorithm>
#include <cmath>

#include "lcq/errors.hpp"

namespace lcq {

namespace {

constexpr double kSlack = 1e-10;  // containment slack relative to the radius scale

Ball ball_0() { return {}; }

Ball ball_1(const Vec3& a) { return {a, 0.0, {a}}; }

Ball ball_2(const Vec3& a, const Vec3& b) {
  Ball out;
  out.center = (a + b) * 0.5;
  out.radius = (a - b).norm() * 0.5;
  out.support = {a, b};
  return out;
}

// Circumsphere of three points (center in their plane); falls back to the
// best 2-point ball when (near-)collinear.
Ball ball_3(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a;
  const Vec3 n = ab.cross(ac);
  const double nn = n.norm2();
  const double scale = std::max(ab.norm2(), ac.norm2());
  if (nn <= 1e-24 * scale * scale) {
    Ball best = ball_2(a, b);
    for (const Ball& cand : {ball_2(a, c), ball_2(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const Vec3 rel =
      (ac.norm2() * n.cross(ab) + ab.norm2() * ac.cross(n)) / (2.0 * nn);
  Ball out;
  out.center = a + rel;
  out.radius = rel.norm();
  out.support = {a, b, c};
  return out;
}

// Circumsphere of four points; falls back to face circumspheres when
// (near-)coplanar.
Ball ball_4(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 ab = b - a, ac = c - a, ad = d - a;
  const double det = ab.dot(ac.cross(ad));
  const double scale = std::max({ab.norm2(), ac.norm2(), ad.norm2()});
  if (std::abs(det) <= 1e-12 * scale * std::sqrt(scale)) {
    Ball best;
    for (const Ball& cand : {ball_3(a, b, c), ball_3(a, b, d), ball_3(a, c, d),
                             ball_3(b, c, d)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const Vec3 rel = (ab.norm2() * ac.cross(ad) + ac.norm2() * ad.cross(ab) +
                    ad.norm2() * ab.cross(ac)) /
                   (2.0 * det);
  Ball out;
  out.center = a + rel;
  out.radius = rel.norm();
  out.support = {a, b, c, d};
  return out;
}

Ball ball_of(const std::vector<Vec3>& s) {
  switch (s.size()) {
    case 0: return ball_0();
    case 1: return ball_1(s[0]);
    case 2: return ball_2(s[0], s[1]);
    case 3: return ball_3(s[0], s[1], s[2]);
    default: return ball_4(s[0], s[1], s[2], s[3]);
  }
}

bool inside(const Ball& b, const Vec3& p) {
  return (p - b.center).norm() <= b.radius + kSlack * (1.0 + b.radius);
}

Ball welzl(std::vector<Vec3>& pts, std::size_t n, std::vector<Vec3>& boundary) {
  if (n == 0 || boundary.size() == 4) return ball_of(boundary);
  Ball b = welzl(pts, n - 1, boundary);
  if (inside(b, pts[n - 1])) return b;
  boundary.push_back(pts[n - 1]);
  b = welzl(pts, n - 1, boundary);
  boundary.pop_back();
  // move-to-front keeps hard points early for the sibling calls
  const Vec3 hard = pts[n - 1];
  for (std::size_t i = n - 1; i > 0; --i) pts[i] = pts[i - 1];
  pts[0] = hard;
  return b;
}

}  // namespace

Ball min_enclosing_ball(const std::vector<Vec3>& points, std::uint64_t shuffle_seed) {
  if (points.empty()) {
    throw EmptySupportError("min_enclosing_ball: empty point set");
  }
  std::vector<Vec3> pts = points;
  // deterministic Fisher-Yates with a splitmix64 stream
  std::uint64_t state = shuffle_seed;
  auto next = [&state] {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  for (std::size_t i = pts.size() - 1; i > 0; --i) {
    std::swap(pts[i], pts[next() % (i + 1)]);
  }
  std::vector<Vec3> boundary;
  return welzl(pts, pts.size(), boundary);
}

}  // namespace lcq
