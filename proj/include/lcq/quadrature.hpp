// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace lcq {

/// Gauss-Legendre rule on [-1, 1]; cached per order, thread-safe.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int n);

/// Flattened composite rule over consecutive panels.
struct LineRule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// Composite Gauss-Legendre over the panels defined by `breaks`
/// (ascending, at least two entries).
LineRule panel_rule(const std::vector<double>& breaks, int nodes_per_panel);

/// Evenly split [a, b] into n panels.
std::vector<double> uniform_breaks(double a, double b, int n);

/// Product grid over a ball in spherical coordinates, stored SoA. Weights
/// carry the full volume element (r^2, the cos-theta rule and the phi
/// factor). n_phi == 1 means the integrand is axisymmetric about z and the
/// phi integral contributes 2*pi exactly.
struct SphericalGrid {
  std::vector<double> px, py, pz;
  std::vector<double> r;
  std::vector<double> w;
  std::size_t size() const { return r.size(); }
};
SphericalGrid spherical_grid(const LineRule& radial, int n_theta, int n_phi);

/// Integrand evaluated in bulk over a grid: fill re/im (preallocated to
/// grid.size()).
using BallIntegrand =
    std::function<void(const SphericalGrid&, double* re, double* im)>;

struct BallIntegralOptions {
  double p_max = 10.0;
  double tol_rel = 1e-9;
  double scale_hint = 1.0;  // floor for the relative-error denominator
  bool axisymmetric = false;
  int max_level = 6;
  const char* what = "integral";  // for error messages
};

struct BallIntegralResult {
  std::complex<double> value;
  double abs_error;  // last refinement delta
  std::size_t nodes;
};

/// Adaptive product quadrature over |p| <= p_max: refines the radial panel
/// count and angular orders until successive levels agree to tol_rel
/// relative to max(|I|, scale_hint). Throws AccuracyError (carrying the
/// best estimate) when the budget is exhausted.
BallIntegralResult integrate_ball(const BallIntegrand& f, const BallIntegralOptions& opt);

}  // namespace lcq
