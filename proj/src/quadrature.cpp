// SPDX-License-Identifier: Apache-2.0
#include "lcq/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lcq/errors.hpp"
#include "lcq/threads.hpp"

namespace lcq {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<double> uniform_breaks(double a, double b, int n) {
  std::vector<double> breaks(n + 1);
  for (int i = 0; i <= n; ++i) breaks[i] = a + (b - a) * i / n;
  return breaks;
}

LineRule panel_rule(const std::vector<double>& breaks, int nodes_per_panel) {
  const GaussLegendre& gl = gauss_legendre(nodes_per_panel);
  LineRule rule;
  const std::size_t n_panels = breaks.size() - 1;
  rule.x.reserve(n_panels * nodes_per_panel);
  rule.w.reserve(n_panels * nodes_per_panel);
  for (std::size_t p = 0; p < n_panels; ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < nodes_per_panel; ++i) {
      rule.x.push_back(mid + half * gl.x[i]);
      rule.w.push_back(half * gl.w[i]);
    }
  }
  return rule;
}

SphericalGrid spherical_grid(const LineRule& radial, int n_theta, int n_phi) {
  const GaussLegendre& gu = gauss_legendre(n_theta);
  SphericalGrid g;
  const std::size_t n = radial.size() * n_theta * n_phi;
  g.px.reserve(n);
  g.py.reserve(n);
  g.pz.reserve(n);
  g.r.reserve(n);
  g.w.reserve(n);
  const double wphi = 2.0 * M_PI / n_phi;
  for (std::size_t ir = 0; ir < radial.size(); ++ir) {
    const double r = radial.x[ir];
    const double wr = radial.w[ir] * r * r;
    for (int iu = 0; iu < n_theta; ++iu) {
      const double u = gu.x[iu];
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double wu = gu.w[iu];
      for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = wphi * ip;  // trapezoid on the periodic circle
        g.px.push_back(r * s * std::cos(phi));
        g.py.push_back(r * s * std::sin(phi));
        g.pz.push_back(r * u);
        g.r.push_back(r);
        g.w.push_back(wr * wu * wphi);
      }
    }
  }
  return g;
}

BallIntegralResult integrate_ball(const BallIntegrand& f, const BallIntegralOptions& opt) {
  std::complex<double> prev{0.0, 0.0};
  double err = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  std::vector<double> re, im;

  for (int level = 0; level <= opt.max_level; ++level) {
    const double grow = std::pow(1.7, level);
    const int n_panels = static_cast<int>(std::lround(8 * grow));
    const int n_theta = static_cast<int>(std::lround(20 * grow));
    const int n_phi = opt.axisymmetric ? 1 : static_cast<int>(std::lround(20 * grow));
    const LineRule radial = panel_rule(uniform_breaks(0.0, opt.p_max, n_panels), 10);
    const SphericalGrid grid = spherical_grid(radial, n_theta, n_phi);

    re.assign(grid.size(), 0.0);
    im.assign(grid.size(), 0.0);
    f(grid, re.data(), im.data());

    // chunked deterministic reduction
    const std::size_t chunk = 4096;
    const std::size_t n_chunks = (grid.size() + chunk - 1) / chunk;
    std::vector<std::complex<double>> partial(n_chunks, {0.0, 0.0});
    parallel_chunks(grid.size(), chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
      double sr = 0.0, si = 0.0;
      for (std::size_t i = b; i < e; ++i) {
        sr += grid.w[i] * re[i];
        si += grid.w[i] * im[i];
      }
      partial[c] = {sr, si};
    });
    std::complex<double> total{0.0, 0.0};
    for (const auto& p : partial) total += p;

    nodes = grid.size();
    if (level > 0) {
      err = std::abs(total - prev);
      const double scale = std::max(std::abs(total), opt.scale_hint);
      if (err <= opt.tol_rel * scale) {
        return {total, err, nodes};
      }
    }
    prev = total;
  }
  throw AccuracyError(std::string(opt.what) + ": quadrature did not converge within budget",
                      prev, err);
}

}  // namespace lcq
