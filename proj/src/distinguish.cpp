// SPDX-License-Identifier: Apache-2.0
#include "lcq/distinguish.hpp"

#include <algorithm>
#include <cmath>

#include "lcq/errors.hpp"
#include "lcq/quadrature.hpp"
#include "lcq/report_io.hpp"
#include "lcq/threads.hpp"

namespace lcq {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3 merge_ball_center(const Vec3& c1, double r1, const Vec3& c2, double r2, double* r_out) {
  const Vec3 d = c2 - c1;
  const double dist = d.norm();
  if (dist + r2 <= r1) {
    *r_out = r1;
    return c1;
  }
  if (dist + r1 <= r2) {
    *r_out = r2;
    return c2;
  }
  const double r = 0.5 * (dist + r1 + r2);
  *r_out = r;
  return c1 + d * ((r - r1) / dist);
}

}  // namespace

PositionPair make_position_pair(const MomentumAmplitude& s1, const MomentumAmplitude& s2,
                                double t0, double support_eps) {
  const double n1 = norm_squared(s1, Measure::lorentz, 1e-10);
  const double n2 = norm_squared(s2, Measure::lorentz, 1e-10);
  if (std::abs(n1 - 1.0) > 1e-6 || std::abs(n2 - 1.0) > 1e-6) {
    throw PreconditionError(
        "make_position_pair: states must be normalized (norms^2 = " + std::to_string(n1) +
        ", " + std::to_string(n2) + ")");
  }
  const complexd overlap = inner_product(s1, s2, Measure::lorentz, 1e-10);
  if (std::abs(overlap) > 1e-6) {
    throw PreconditionError("make_position_pair: states must be orthogonal (|<1|2>| = " +
                            std::to_string(std::abs(overlap)) + ")");
  }
  PositionPair pair;
  pair.phi1 = PositionAmplitude::transform(s1, t0, PositionConvention::half_density);
  pair.phi2 = PositionAmplitude::transform(s2, t0, PositionConvention::half_density);
  pair.full_overlap = overlap;
  pair.floor = std::max(pair.phi1.noise_floor(), pair.phi2.noise_floor());
  pair.support_eps = support_eps;

  const Vec3 c1 = pair.phi1.centroid();
  const Vec3 c2 = pair.phi2.centroid();
  const double r1 = epsilon_support_radius(pair.phi1, c1, support_eps);
  const double r2 = epsilon_support_radius(pair.phi2, c2, support_eps);
  pair.default_observer = merge_ball_center(c1, r1, c2, r2, &pair.joint_support_radius);
  return pair;
}

namespace {

struct XGrid {
  // flattened nodes around the observer with full volume weights
  std::vector<Vec3> x;
  std::vector<double> w;
  std::vector<std::size_t> panel_end;  // prefix end index per radial panel
  std::vector<double> panel_radius;    // outer radius per panel
};

XGrid build_xgrid(const Vec3& observer, const std::vector<double>& radial_breaks,
                  bool axisym) {
  const int n_r = 10;
  const int n_u = 48;
  const int n_phi = axisym ? 1 : 32;
  const GaussLegendre& gr = gauss_legendre(n_r);
  const GaussLegendre& gu = gauss_legendre(n_u);
  XGrid grid;
  for (std::size_t panel = 0; panel + 1 < radial_breaks.size(); ++panel) {
    const double r_lo = radial_breaks[panel], r_hi = radial_breaks[panel + 1];
    for (int ir = 0; ir < n_r; ++ir) {
      const double r = 0.5 * (r_lo + r_hi) + 0.5 * (r_hi - r_lo) * gr.x[ir];
      const double wr = 0.5 * (r_hi - r_lo) * gr.w[ir] * r * r;
      for (int iu = 0; iu < n_u; ++iu) {
        const double u = gu.x[iu];
        const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int ip = 0; ip < n_phi; ++ip) {
          const double phi = 2.0 * kPi * ip / n_phi;
          grid.x.push_back(observer + Vec3{r * su * std::cos(phi), r * su * std::sin(phi),
                                           r * u});
          grid.w.push_back(wr * gu.w[iu] * 2.0 * kPi / n_phi);
        }
      }
    }
    grid.panel_end.push_back(grid.x.size());
    grid.panel_radius.push_back(r_hi);
  }
  return grid;
}

bool pair_axisym(const PositionPair& pair, const Vec3& observer) {
  return pair.phi1.axisymmetric_z() && pair.phi2.axisymmetric_z() && observer.x == 0.0 &&
         observer.y == 0.0;
}

// Cumulative Gram entries over the panels of an x-grid.
struct GramAccumulator {
  std::vector<complexd> g11, g12, g22;  // per panel boundary
};

GramAccumulator accumulate_gram(const PositionPair& pair, const XGrid& grid) {
  const std::size_t n = grid.x.size();
  std::vector<complexd> v1(n), v2(n);
  const int ncomp = pair.phi1.components();
  parallel_chunks(n, 256, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const PositionEval e1 = pair.phi1.eval(grid.x[i]);
      const PositionEval e2 = pair.phi2.eval(grid.x[i]);
      // component-summed sesquilinear products
      complexd a12{0.0, 0.0};
      double a11 = 0.0, a22 = 0.0;
      for (int c = 0; c < ncomp; ++c) {
        a11 += std::norm(e1.components[c]);
        a22 += std::norm(e2.components[c]);
        a12 += std::conj(e1.components[c]) * e2.components[c];
      }
      v1[i] = {a11, a22};  // pack the two real densities
      v2[i] = a12;
    }
  });
  GramAccumulator acc;
  complexd g11{0.0, 0.0}, g12{0.0, 0.0}, g22{0.0, 0.0};
  std::size_t begin = 0;
  for (std::size_t panel = 0; panel < grid.panel_end.size(); ++panel) {
    for (std::size_t i = begin; i < grid.panel_end[panel]; ++i) {
      g11 += grid.w[i] * v1[i].real();
      g22 += grid.w[i] * v1[i].imag();
      g12 += grid.w[i] * v2[i];
    }
    begin = grid.panel_end[panel];
    acc.g11.push_back(g11);
    acc.g12.push_back(g12);
    acc.g22.push_back(g22);
  }
  return acc;
}

std::vector<double> radial_breaks_for(double t_max) {
  std::vector<double> breaks{0.0};
  double r = 0.0;
  while (r < t_max - 1e-12) {
    const double width = std::clamp(r / 12.0, 0.2, 1.5);
    r = std::min(r + width, t_max);
    breaks.push_back(r);
  }
  return breaks;
}

GramMatrix gram_from(const PositionPair& pair, const Vec3& observer, double T, complexd g11,
                     complexd g12, complexd g22) {
  GramMatrix g;
  g.n = 2;
  g.entries = {g11, g12, std::conj(g12), g22};
  g.labels = {pair.phi1.source_label(), pair.phi2.source_label()};
  g.measure = Measure::lorentz;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "ball(obs=(%g,%g,%g),T=%g)", observer.x, observer.y,
                observer.z, T);
  g.region = buf;
  return g;
}

}  // namespace

GramMatrix truncated_gram(const PositionPair& pair, const AccessRegion& region) {
  if (!(region.T >= 0.0)) throw PreconditionError("access region requires T >= 0");
  if (region.T == 0.0) {
    return gram_from(pair, region.observer, 0.0, {0, 0}, {0, 0}, {0, 0});
  }
  const XGrid grid =
      build_xgrid(region.observer, radial_breaks_for(region.T), pair_axisym(pair, region.observer));
  const GramAccumulator acc = accumulate_gram(pair, grid);
  return gram_from(pair, region.observer, region.T, acc.g11.back(), acc.g12.back(),
                   acc.g22.back());
}

Confusion confusion_matrix(const GramMatrix& g, double band_tol) {
  if (g.n != 2) throw PreconditionError("confusion_matrix expects a 2x2 Gram matrix");
  if (g.hermiticity_residual() > band_tol) {
    throw ModelViolationError("confusion_matrix: Gram matrix is not Hermitian (residual " +
                              std::to_string(g.hermiticity_residual()) + ")");
  }
  const auto eig = g.eigenvalues();
  if (eig.front() < -band_tol || eig.back() > 1.0 + band_tol) {
    throw ModelViolationError("confusion_matrix: Gram spectrum [" +
                              std::to_string(eig.front()) + ", " +
                              std::to_string(eig.back()) + "] outside the [0, 1] band");
  }
  Confusion out;
  out.c = {std::norm(g.at(0, 0)), std::norm(g.at(0, 1)), std::norm(g.at(1, 0)),
           std::norm(g.at(1, 1))};
  out.eps = 1.0 - 0.5 * (out.c[0] + out.c[3]);
  out.inconclusive = {1.0 - out.c[0] - out.c[1], 1.0 - out.c[2] - out.c[3]};
  return out;
}

DistinguishReport error_curve(const PositionPair& pair, const Vec3& observer,
                              const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw PreconditionError("error_curve: empty T grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0)) throw PreconditionError("error_curve: T must be >= 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw PreconditionError("error_curve: T grid must be strictly ascending");
    }
  }

  DistinguishReport report;
  report.t_samples = t_grid;
  report.floor = pair.floor;
  report.observer = observer;
  report.label1 = pair.phi1.source_label();
  report.label2 = pair.phi2.source_label();

  // one cumulative pass with panel boundaries aligned to the T grid
  std::vector<double> breaks{0.0};
  for (double t : t_grid) {
    if (t == 0.0) continue;
    double r = breaks.back();
    const double lo = r;
    const int sub = std::max(1, static_cast<int>(std::ceil((t - lo) / 0.3)));
    for (int s = 1; s <= sub; ++s) breaks.push_back(lo + (t - lo) * s / sub);
  }
  const XGrid grid = build_xgrid(observer, breaks, pair_axisym(pair, observer));
  const GramAccumulator acc = accumulate_gram(pair, grid);

  for (double t : t_grid) {
    complexd g11{0, 0}, g12{0, 0}, g22{0, 0};
    if (t > 0.0) {
      // last panel with outer radius <= t (boundaries align by construction)
      std::size_t k = 0;
      for (std::size_t i = 0; i < grid.panel_radius.size(); ++i) {
        if (grid.panel_radius[i] <= t + 1e-12) k = i + 1;
      }
      g11 = acc.g11[k - 1];
      g12 = acc.g12[k - 1];
      g22 = acc.g22[k - 1];
    }
    const GramMatrix g = gram_from(pair, observer, t, g11, g12, g22);
    const Confusion c = confusion_matrix(g, 2e-4 + 10.0 * pair.floor);
    report.gram.push_back(g);
    report.confusion.push_back(c);
    report.floor_flag.push_back(c.eps <= pair.floor);
  }

  std::vector<double> eps;
  for (const Confusion& c : report.confusion) eps.push_back(c.eps);
  try {
    report.fit = decay_fit(report.t_samples, eps, report.floor);
  } catch (const FitWindowError&) {
    report.fit.reset();
  }
  return report;
}

DecayFit decay_fit(const std::vector<double>& t_samples, const std::vector<double>& eps,
                   double floor) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] > floor && eps[i] > 0.0) usable.push_back(i);
  }
  if (usable.size() < 4) {
    throw FitWindowError("decay_fit: need >= 4 above-floor samples, have " +
                         std::to_string(usable.size()));
  }
  const std::size_t window = std::max<std::size_t>(4, (usable.size() + 1) / 2);
  const std::size_t start = usable.size() - window;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(window);
  for (std::size_t k = start; k < usable.size(); ++k) {
    const double x = t_samples[usable[k]];
    const double y = std::log(eps[usable[k]]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  DecayFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t k = start; k < usable.size(); ++k) {
    const double x = t_samples[usable[k]];
    const double y = std::log(eps[usable[k]]);
    const double r = y - (fit.slope * x + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.window_begin = usable[start];
  fit.window_end = usable.back() + 1;
  return fit;
}

std::string distinguish_report_csv(const DistinguishReport& report) {
  CsvWriter csv({"T", "ReG11", "ReG22", "ReG12", "ImG12", "C11", "C12", "C21", "C22", "eps",
                 "floor_flag"});
  for (std::size_t i = 0; i < report.t_samples.size(); ++i) {
    const GramMatrix& g = report.gram[i];
    const Confusion& c = report.confusion[i];
    csv.row({format_csv_double(report.t_samples[i]), format_csv_double(g.at(0, 0).real()),
             format_csv_double(g.at(1, 1).real()), format_csv_double(g.at(0, 1).real()),
             format_csv_double(g.at(0, 1).imag()), format_csv_double(c.c[0]),
             format_csv_double(c.c[1]), format_csv_double(c.c[2]), format_csv_double(c.c[3]),
             format_csv_double(c.eps), report.floor_flag[i] ? "1" : "0"});
  }
  return csv.str();
}

std::string distinguish_report_json(const DistinguishReport& report) {
  JsonWriter w;
  w.begin_object();
  w.field("state_1", report.label1);
  w.field("state_2", report.label2);
  w.begin_array("observer");
  w.value(report.observer.x).value(report.observer.y).value(report.observer.z);
  w.end_array();
  w.field("floor", report.floor);
  w.begin_array("samples");
  for (std::size_t i = 0; i < report.t_samples.size(); ++i) {
    const GramMatrix& g = report.gram[i];
    const Confusion& c = report.confusion[i];
    w.begin_object();
    w.field("T", report.t_samples[i]);
    w.field("G11", g.at(0, 0).real());
    w.field("G22", g.at(1, 1).real());
    w.field("ReG12", g.at(0, 1).real());
    w.field("ImG12", g.at(0, 1).imag());
    w.field("C11", c.c[0]);
    w.field("C12", c.c[1]);
    w.field("C21", c.c[2]);
    w.field("C22", c.c[3]);
    w.field("eps", c.eps);
    w.field("inconclusive_1", c.inconclusive[0]);
    w.field("inconclusive_2", c.inconclusive[1]);
    w.field("floor_flag", static_cast<bool>(report.floor_flag[i]));
    w.end_object();
  }
  w.end_array();
  if (report.fit) {
    w.key("fit");
    w.begin_object();
    w.field("slope", report.fit->slope);
    w.field("intercept", report.fit->intercept);
    w.field("r_squared", report.fit->r_squared);
    w.field("window_begin", static_cast<long long>(report.fit->window_begin));
    w.field("window_end", static_cast<long long>(report.fit->window_end));
    w.end_object();
  } else {
    w.key("fit");
    w.begin_object();
    w.end_object();
  }
  w.end_object();
  return w.str();
}

}  // namespace lcq
