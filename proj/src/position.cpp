// SPDX-License-Identifier: Apache-2.0
#include "lcq/position.hpp"

#include <algorithm>
#include <cmath>

#include "lcq/errors.hpp"
#include "lcq/inner_product.hpp"
#include "lcq/polarization.hpp"
#include "lcq/quadrature.hpp"
#include "lcq/report_io.hpp"
#include "lcq/simd/simd.hpp"

namespace lcq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kPhotonLMax = 640;
constexpr std::size_t kNodeCap = 300000;

const complexd kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// P_L(u) and the m = 1 associated P^1_L(u) (Condon-Shortley) for L <= lmax.
void legendre_arrays(double u, int lmax, std::vector<double>& p0, std::vector<double>& p1) {
  p0.assign(lmax + 1, 0.0);
  p1.assign(lmax + 1, 0.0);
  p0[0] = 1.0;
  if (lmax == 0) return;
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  p0[1] = u;
  p1[1] = -s;
  for (int l = 1; l < lmax; ++l) {
    p0[l + 1] = ((2.0 * l + 1.0) * u * p0[l] - l * p0[l - 1]) / (l + 1.0);
    p1[l + 1] = ((2.0 * l + 1.0) * u * p1[l] - (l + 1.0) * p1[l - 1]) / static_cast<double>(l);
  }
}

// j_L(z) for L = 0..lmax: upward recurrence while it is stable (L < z),
// Miller's normalized downward recurrence otherwise.
void sph_jn_array(double z, int lmax, std::vector<double>& out) {
  out.assign(lmax + 1, 0.0);
  if (z < 1e-8) {
    double v = 1.0 - z * z / 6.0;
    for (int l = 0; l <= lmax; ++l) {
      out[l] = v;
      v *= z / (2.0 * l + 3.0);
    }
    return;
  }
  const double j0 = std::sin(z) / z;
  out[0] = j0;
  if (lmax == 0) return;
  const double j1v = j0 / z - std::cos(z) / z;
  if (static_cast<double>(lmax) < 0.7 * z) {
    out[1] = j1v;
    for (int l = 1; l < lmax; ++l) {
      out[l + 1] = (2.0 * l + 1.0) / z * out[l] - out[l - 1];
    }
    return;
  }
  const int extra = 16 + static_cast<int>(std::ceil(8.0 * std::cbrt(z)));
  const int start = std::max(lmax, static_cast<int>(std::ceil(z))) + extra;
  double fp = 0.0, fc = 1e-280;
  for (int l = start; l >= 1; --l) {
    const double fm = (2.0 * l + 1.0) / z * fc - fp;
    fp = fc;
    fc = fm;
    if (l - 1 <= lmax) out[l - 1] = fc;
    if (std::abs(fc) > 1e260) {
      fp *= 1e-260;
      fc *= 1e-260;
      for (int k = std::min(l - 1, lmax); k <= lmax; ++k) out[k] *= 1e-260;
    }
  }
  const double scale = j0 / out[0];
  for (int l = 0; l <= lmax; ++l) out[l] *= scale;
}

int l_cut(double z) {
  return std::min(kPhotonLMax,
                  static_cast<int>(std::ceil(z + 8.0 * std::cbrt(z + 1.0))) + 30);
}

double term_position_width(const Term& t, double mass) {
  switch (t.profile.family) {
    case Profile::Family::gaussian:
    case Profile::Family::ir_test:
      return 1.0 / (2.0 * t.profile.sigma);
    case Profile::Family::energy_exp:
      return t.profile.rate + 1.0 / std::max(mass, 0.5);
    case Profile::Family::power_iso:
      return 1.0 / t.profile.scale;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Photon partial-wave tables:
//   V^c_{L,M} = int w_c(khat, s) B_{L,M}(khat) dOmega,
//   B_{L,0} = P_L(cos th), B_{L,+-1} = P^1_L(cos th) e^{+-i phi}.
// Built once per helicity over the spherical frame, which carries only the
// m in {-1, 0, +1} azimuthal harmonics.
// ---------------------------------------------------------------------------

struct PhotonWaveTable {
  // v[component][M + 1][L]
  std::array<std::array<std::vector<complexd>, 3>, 3> v;
};

const PhotonWaveTable& photon_wave_table(int helicity) {
  static const std::array<PhotonWaveTable, 2> tables = [] {
    std::array<PhotonWaveTable, 2> out;
    for (PhotonWaveTable& t : out) {
      for (auto& comp : t.v) {
        for (auto& m : comp) m.assign(kPhotonLMax + 1, {0.0, 0.0});
      }
    }
    const int n_theta = 1024;
    const GaussLegendre& gl = gauss_legendre(n_theta);
    std::vector<double> p0, p1;
    const complexd i_unit{0.0, 1.0};
    for (int iu = 0; iu < n_theta; ++iu) {
      const double u = gl.x[iu];
      const double wu = gl.w[iu];
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      legendre_arrays(u, kPhotonLMax, p0, p1);
      auto khat = [&](double phi) { return Vec3{s * std::cos(phi), s * std::sin(phi), u}; };
      const PolarizationBasis b0 = photon_polarization_basis(khat(0.0), PhotonFrame::spherical);
      const PolarizationBasis b1 =
          photon_polarization_basis(khat(0.5 * kPi), PhotonFrame::spherical);
      const PolarizationBasis b2 = photon_polarization_basis(khat(kPi), PhotonFrame::spherical);
      for (int hel = 0; hel < 2; ++hel) {
        PhotonWaveTable& t = out[hel];
        const CVec3& w0 = hel == 0 ? b0.w_plus : b0.w_minus;
        const CVec3& w1 = hel == 0 ? b1.w_plus : b1.w_minus;
        const CVec3& w2 = hel == 0 ? b2.w_plus : b2.w_minus;
        for (int c = 0; c < 3; ++c) {
          // w_c(phi) = A0 + A(+1) e^{i phi} + A(-1) e^{-i phi}
          const complexd a0 = 0.5 * (w0[c] + w2[c]);
          const complexd uu = w0[c] - a0;
          const complexd vv = w1[c] - a0;
          const complexd a_plus = 0.5 * (uu - i_unit * vv);
          const complexd a_minus = 0.5 * (uu + i_unit * vv);
          // phi integral of w_c * e^{iM phi} picks A(-M) * 2 pi
          for (int l = 0; l <= kPhotonLMax; ++l) {
            t.v[c][0][l] += 2.0 * kPi * wu * a_plus * p1[l];   // M = -1
            t.v[c][1][l] += 2.0 * kPi * wu * a0 * p0[l];       // M = 0
            t.v[c][2][l] += 2.0 * kPi * wu * a_minus * p1[l];  // M = +1
          }
        }
      }
    }
    return out;
  }();
  return helicity > 0 ? tables[0] : tables[1];
}

}  // namespace

std::string tail_report_csv(const TailReport& report) {
  CsvWriter csv({"R", "tail_mass", "floor_flag"});
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    csv.row({format_csv_double(report.radii[i]), format_csv_double(report.tail[i]),
             report.floor_flag[i] ? "1" : "0"});
  }
  return csv.str();
}

// ---------------------------------------------------------------------------
// Transform construction
// ---------------------------------------------------------------------------

void PositionAmplitude::build_channels(const MomentumAmplitude& src, double tail_eps) {
  const double mass = src.kind.mass;
  const double p_max = src.suggested_pmax(tail_eps) * 1.05;

  // Fixed node table sized for the design radius; oscillations of
  // j_l(p R) e^{-i t p0} resolved with >= 2.2 panels per cycle.
  const double osc = p_max * (design_radius_ + std::abs(t0_)) / (2.0 * kPi);
  int n_panels = static_cast<int>(std::ceil(2.2 * osc)) + 12;
  if (static_cast<std::size_t>(n_panels) * 12 > kNodeCap) {
    n_panels = static_cast<int>(kNodeCap / 12);
    design_radius_ =
        std::max(1.0, (n_panels - 12) / 2.2 * 2.0 * kPi / p_max - std::abs(t0_));
  }
  const GaussLegendre& gl = gauss_legendre(12);

  std::vector<double> p_nodes, w_nodes;
  p_nodes.reserve(static_cast<std::size_t>(n_panels) * 12);
  w_nodes.reserve(static_cast<std::size_t>(n_panels) * 12);
  const double dp = p_max / n_panels;
  // first panel in s = sqrt(p): regularizes the half-density sqrt branch at
  // the massless origin
  const double s_hi = std::sqrt(dp);
  for (int i = 0; i < 12; ++i) {
    const double s = 0.5 * s_hi * (gl.x[i] + 1.0);
    p_nodes.push_back(s * s);
    w_nodes.push_back(0.5 * s_hi * gl.w[i] * 2.0 * s);
  }
  for (int panel = 1; panel < n_panels; ++panel) {
    const double a = panel * dp;
    for (int i = 0; i < 12; ++i) {
      p_nodes.push_back(a + 0.5 * dp * (gl.x[i] + 1.0));
      w_nodes.push_back(0.5 * dp * gl.w[i]);
    }
  }
  const std::size_t n = p_nodes.size();

  std::vector<double> p0_nodes(n), conv(n);
  const double kconv =
      convention_ == PositionConvention::half_density ? std::pow(2.0 * kPi, -1.5) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    p0_nodes[i] = std::sqrt(p_nodes[i] * p_nodes[i] + mass * mass);
    conv[i] = convention_ == PositionConvention::half_density
                  ? kconv / std::sqrt(2.0 * p0_nodes[i])
                  : 1.0;
  }

  auto make_channel = [&](const Term& t, int ell, const Vec3& axis,
                          const std::vector<double>& g_samples, complexd coef,
                          int helicity) {
    RadialChannel ch;
    ch.coef = coef;
    ch.ell = ell;
    ch.axis = axis;
    ch.center = t.shift;
    ch.helicity = helicity;
    ch.p = p_nodes;
    ch.p0 = p0_nodes;
    ch.wg.resize(n);
    ch.wg_phase.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      ch.wg[i] = w_nodes[i] * p_nodes[i] * p_nodes[i] * g_samples[i] * conv[i];
      const double phase = -t0_ * p0_nodes[i];
      ch.wg_phase[i] = ch.wg[i] * complexd{std::cos(phase), std::sin(phase)};
    }
    channels_.push_back(std::move(ch));
  };

  std::vector<double> g(n);
  for (const Term& t : src.terms) {
    const double q = t.momentum_center.norm();
    if (src.kind.type == FieldType::Photon) {
      if (q != 0.0 || t.ell != 0) {
        throw UnsupportedError(
            "photon position transforms support radial (optionally shifted) profiles");
      }
      t.profile.eval_batch(p_nodes.data(), g.data(), n, 0.0);
      for (int hel = 0; hel < 2; ++hel) {
        const complexd w_s = t.spin[hel];
        if (std::abs(w_s) == 0.0) continue;
        make_channel(t, 0, t.axis, g, t.coef * w_s, hel == 0 ? +1 : -1);
      }
      continue;
    }
    if (q == 0.0) {
      t.profile.eval_batch(p_nodes.data(), g.data(), n, mass);
      make_channel(t, t.ell, t.axis, g,
                   t.coef * 4.0 * kPi * kIPow[t.ell % 4], 0);
      continue;
    }
    // momentum-centered profile: Legendre expansion about the q axis with
    // numerically projected radial coefficients g_l(p)
    const Vec3 qhat = t.momentum_center / q;
    const GaussLegendre& proj = gauss_legendre(64);
    std::vector<double> prof(n * 64);
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = 0; k < 64; ++k) {
        const double r2 =
            p_nodes[i] * p_nodes[i] + q * q - 2.0 * p_nodes[i] * q * proj.x[k];
        prof[i * 64 + k] = t.profile.eval(std::sqrt(std::max(0.0, r2)), mass);
      }
    }
    std::vector<double> pl_prev(64, 1.0), pl_cur(64), pl_next(64);
    for (int k = 0; k < 64; ++k) pl_cur[k] = proj.x[k];
    double ref = 0.0;
    int quiet = 0;
    for (int ell = 0; ell <= 80 && quiet < 2; ++ell) {
      const std::vector<double>& pl = ell == 0 ? pl_prev : pl_cur;
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 64; ++k) acc += proj.w[k] * prof[i * 64 + k] * pl[k];
        g[i] = 0.5 * (2.0 * ell + 1.0) * acc;
        worst = std::max(worst, std::abs(g[i]) * w_nodes[i] * p_nodes[i] * p_nodes[i]);
      }
      if (ell == 0) ref = std::max(worst, 1e-300);
      quiet = worst < 1e-15 * ref ? quiet + 1 : 0;
      make_channel(t, ell, qhat, g, t.coef * 4.0 * kPi * kIPow[ell % 4], 0);
      if (ell >= 1) {
        for (int k = 0; k < 64; ++k) {
          pl_next[k] = ((2.0 * ell + 1.0) * proj.x[k] * pl_cur[k] - ell * pl_prev[k]) /
                       (ell + 1.0);
        }
        pl_prev = pl_cur;
        pl_cur = pl_next;
      }
    }
  }
}

PositionAmplitude PositionAmplitude::transform(const MomentumAmplitude& source, double t0,
                                               PositionConvention convention,
                                               double design_radius) {
  if (source.kind.type == FieldType::Dirac) {
    throw UnsupportedError(
        "position amplitudes are implemented for scalar and photon fields");
  }
  if (source.table) {
    throw UnsupportedError("position transforms of tabulated amplitudes");
  }
  if (source.rapidity != 0.0) {
    throw UnsupportedError("position transforms of boosted amplitudes");
  }

  PositionAmplitude out;
  out.kind_ = source.kind;
  out.t0_ = t0;
  out.convention_ = convention;
  out.label_ = source.label;
  out.momentum_norm2_ = norm_squared(source, Measure::lorentz, 1e-10);

  double base = std::abs(t0);
  double width = 0.0;
  for (const Term& t : source.terms) {
    base = std::max(base, std::abs(t0) + t.shift.norm());
    width = std::max(width, term_position_width(t, source.kind.mass));
  }
  if (design_radius > 0.0) {
    out.design_radius_ = design_radius;
  } else if (source.kind.mass > 0.0) {
    out.design_radius_ = base + 12.0 * width + 34.0 / source.kind.mass;
  } else {
    // massless half-density tails are algebraic; push the cap far out
    out.design_radius_ = base + 12.0 * width + 420.0 * width;
  }

  out.build_channels(source, 1e-12);

  out.isotropic_ = source.kind.type == FieldType::Scalar;
  out.axisym_z_ = true;
  for (const RadialChannel& ch : out.channels_) {
    if (ch.ell != 0 || ch.center.norm2() != 0.0 || ch.helicity != 0) out.isotropic_ = false;
    const bool on_z = ch.center.x == 0.0 && ch.center.y == 0.0 &&
                      (ch.ell == 0 || (ch.axis.x == 0.0 && ch.axis.y == 0.0));
    if (!on_z) out.axisym_z_ = false;
  }
  return out;
}

PositionAmplitude PositionAmplitude::compact_bump(double r0, const Vec3& center) {
  if (!(r0 > 0.0)) throw PreconditionError("compact_bump requires r0 > 0");
  PositionAmplitude out;
  out.compact_ = true;
  out.bump_r0_ = r0;
  out.bump_center_ = center;
  out.kind_ = FieldKind::scalar(0.0);
  out.convention_ = PositionConvention::half_density;
  out.label_ = "compact_bump";
  out.design_radius_ = 2.0 * r0 + center.norm() + 1.0;
  out.momentum_norm2_ = 1.0;
  out.isotropic_ = center.norm2() == 0.0;
  out.axisym_z_ = center.x == 0.0 && center.y == 0.0;
  // unit norm: 4 pi r0^3 int_0^1 (1-s^2)^6 s^2 ds = 4 pi r0^3 * B(3/2,7)/2
  const double beta = std::tgamma(1.5) * std::tgamma(7.0) / std::tgamma(8.5);
  out.bump_norm_ = 1.0 / std::sqrt(4.0 * kPi * r0 * r0 * r0 * 0.5 * beta);
  return out;
}

int PositionAmplitude::components() const {
  if (compact_) return 1;
  return kind_.type == FieldType::Photon ? 3 : 1;
}

complexd PositionAmplitude::eval_scalar_channels(const Vec3& x, bool* low_conf) const {
  complexd acc{0.0, 0.0};
  std::vector<double> jn;
  for (const RadialChannel& ch : channels_) {
    const Vec3 y = x - ch.center;
    const double r = y.norm();
    if (r > design_radius_ * 1.02) *low_conf = true;
    if (ch.ell == 0) {
      double re = 0.0, im = 0.0;
      simd::ops().radial_phase_sum(ch.p.data(), ch.p0.data(), ch.wg.data(), ch.p.size(), r,
                                   t0_, &re, &im);
      acc += ch.coef * complexd{re, im};
      continue;
    }
    if (r == 0.0) continue;  // j_l(0) = 0 for l >= 1
    const double uu = ch.axis.dot(y) / r;
    complexd s{0.0, 0.0};
    // per-node spherical Bessel at one order: stable upward needs l < z, use
    // the array helper per node only over the needed order
    jn.resize(ch.ell + 1);
    for (std::size_t i = 0; i < ch.p.size(); ++i) {
      sph_jn_array(ch.p[i] * r, ch.ell, jn);
      s += ch.wg_phase[i] * jn[ch.ell];
    }
    double pl_prev = 1.0, pl = uu;
    for (int l = 1; l < ch.ell; ++l) {
      const double nxt = ((2.0 * l + 1.0) * uu * pl - l * pl_prev) / (l + 1.0);
      pl_prev = pl;
      pl = nxt;
    }
    acc += ch.coef * (ch.ell == 0 ? 1.0 : pl) * s;
  }
  return acc;
}

std::array<complexd, 3> PositionAmplitude::eval_photon_vector(const Vec3& x,
                                                              bool* low_conf) const {
  std::array<complexd, 3> out{};
  std::vector<double> jn, pl0, pl1, s_re, s_im;
  for (const RadialChannel& ch : channels_) {
    const Vec3 y = x - ch.center;
    const double r = y.norm();
    if (r > design_radius_ * 1.02) *low_conf = true;
    const PhotonWaveTable& table = photon_wave_table(ch.helicity);
    const double p_top = ch.p.back();
    const int lmax = l_cut(p_top * r);
    // radial sums S_L = sum_i wg_phase_i j_L(p_i r)
    s_re.assign(lmax + 1, 0.0);
    s_im.assign(lmax + 1, 0.0);
    for (std::size_t i = 0; i < ch.p.size(); ++i) {
      const double z = ch.p[i] * r;
      const int li = std::min(lmax, l_cut(z));
      sph_jn_array(z, li, jn);
      const complexd w = ch.wg_phase[i];
      for (int l = 0; l <= li; ++l) {
        s_re[l] += w.real() * jn[l];
        s_im[l] += w.imag() * jn[l];
      }
    }
    double u_y = 1.0, phi_y = 0.0;
    if (r > 0.0) {
      u_y = y.z / r;
      phi_y = std::atan2(y.y, y.x);
    }
    legendre_arrays(u_y, lmax, pl0, pl1);
    const complexd e_min{std::cos(phi_y), -std::sin(phi_y)};  // e^{-i phi_y}
    const complexd e_pls = std::conj(e_min);
    for (int l = 0; l <= lmax; ++l) {
      const complexd s_l{s_re[l], s_im[l]};
      const complexd pre = static_cast<double>(2 * l + 1) * kIPow[l % 4] * s_l;
      const double ratio = l >= 1 ? 1.0 / (static_cast<double>(l) * (l + 1.0)) : 0.0;
      for (int c = 0; c < 3; ++c) {
        complexd ang = pl0[l] * table.v[c][1][l];
        if (l >= 1) {
          ang += ratio * pl1[l] *
                 (e_min * table.v[c][2][l] + e_pls * table.v[c][0][l]);
        }
        out[c] += ch.coef * pre * ang;
      }
    }
  }
  return out;
}

PositionEval PositionAmplitude::eval(const Vec3& x) const {
  PositionEval ev;
  if (compact_) {
    const double r = (x - bump_center_).norm();
    double v = 0.0;
    if (r < bump_r0_) {
      const double z = 1.0 - (r / bump_r0_) * (r / bump_r0_);
      v = bump_norm_ * z * z * z;
    }
    ev.components = {complexd{v, 0.0}};
    return ev;
  }
  bool low = false;
  if (kind_.type == FieldType::Photon) {
    const auto f = eval_photon_vector(x, &low);
    ev.components = {f[0], f[1], f[2]};
  } else {
    ev.components = {eval_scalar_channels(x, &low)};
  }
  ev.low_confidence = low;
  return ev;
}

double PositionAmplitude::density(const Vec3& x) const {
  const PositionEval ev = eval(x);
  double d = 0.0;
  for (const complexd& c : ev.components) d += std::norm(c);
  return d;
}

// ---------------------------------------------------------------------------
// Cumulative localization mass
// ---------------------------------------------------------------------------

double PositionAmplitude::panel_mass(const Vec3& center, double r_lo, double r_hi) const {
  if (r_hi <= r_lo) return 0.0;
  if (compact_) {
    // radial polynomial, exact under a 16-node rule
    const double lo = std::max(0.0, r_lo);
    const GaussLegendre& gl = gauss_legendre(16);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double r = 0.5 * (r_lo + r_hi) + 0.5 * (r_hi - r_lo) * gl.x[i];
      const double w = 0.5 * (r_hi - r_lo) * gl.w[i];
      const double d = density(bump_center_ + Vec3{0.0, 0.0, r});
      acc += w * 4.0 * kPi * r * r * d;
    }
    (void)lo;
    return acc;
  }
  const bool centered_iso = isotropic_ && center.norm2() == 0.0;
  const bool axisym = axisym_z_ && center.x == 0.0 && center.y == 0.0;
  const int n_r = 8;
  const int n_u = centered_iso ? 1 : (axisym ? 48 : 32);
  const int n_phi = centered_iso || axisym ? 1 : 32;
  const GaussLegendre& gr = gauss_legendre(n_r);
  const GaussLegendre& gu = gauss_legendre(n_u);
  double acc = 0.0;
  for (int ir = 0; ir < n_r; ++ir) {
    const double r = 0.5 * (r_lo + r_hi) + 0.5 * (r_hi - r_lo) * gr.x[ir];
    const double wr = 0.5 * (r_hi - r_lo) * gr.w[ir] * r * r;
    if (centered_iso) {
      acc += wr * 4.0 * kPi * density(center + Vec3{0.0, 0.0, r});
      continue;
    }
    for (int iu = 0; iu < n_u; ++iu) {
      const double u = gu.x[iu];
      const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double wu = gu.w[iu];
      if (n_phi == 1) {
        acc += wr * wu * 2.0 * kPi * density(center + Vec3{r * su, 0.0, r * u});
      } else {
        for (int ip = 0; ip < n_phi; ++ip) {
          const double phi = 2.0 * kPi * ip / n_phi;
          acc += wr * wu * (2.0 * kPi / n_phi) *
                 density(center + Vec3{r * su * std::cos(phi), r * su * std::sin(phi),
                                       r * u});
        }
      }
    }
  }
  return acc;
}

PositionAmplitude::MassProfile PositionAmplitude::build_profile(const Vec3& center) const {
  MassProfile prof;
  prof.breaks.push_back(0.0);
  prof.cum.push_back(0.0);
  const double r_stop = compact_ ? bump_r0_ * 1.5 + 1.0 : design_radius_;
  double r = 0.0;
  double total = 0.0;
  while (r < r_stop - 1e-12) {
    const double width = std::clamp(r / 12.0, 0.25, 2.0);
    const double r_next = std::min(r + width, r_stop);
    total += panel_mass(center, r, r_next);
    prof.breaks.push_back(r_next);
    prof.cum.push_back(total);
    r = r_next;
  }
  prof.total = total;
  return prof;
}

const PositionAmplitude::MassProfile& PositionAmplitude::profile_for(const Vec3& center) const {
  const std::array<double, 3> key{center.x, center.y, center.z};
  auto it = profiles_.find(key);
  if (it == profiles_.end()) it = profiles_.emplace(key, build_profile(center)).first;
  return it->second;
}

double PositionAmplitude::mass_within(const Vec3& center, double R) const {
  if (R <= 0.0) return 0.0;
  if (compact_) {
    // exact: the bump vanishes identically beyond its support radius
    const double r_eff = std::min(R, bump_r0_);
    const MassProfile& prof = profile_for(center);
    if (r_eff >= prof.breaks.back()) return prof.total;
    const auto it = std::upper_bound(prof.breaks.begin(), prof.breaks.end(), r_eff);
    const std::size_t k = static_cast<std::size_t>(it - prof.breaks.begin()) - 1;
    return prof.cum[k] + panel_mass(center, prof.breaks[k], r_eff);
  }
  const MassProfile& prof = profile_for(center);
  if (R >= prof.breaks.back()) return prof.total;
  const auto it = std::upper_bound(prof.breaks.begin(), prof.breaks.end(), R);
  const std::size_t k = static_cast<std::size_t>(it - prof.breaks.begin()) - 1;
  return prof.cum[k] + panel_mass(center, prof.breaks[k], R);
}

double PositionAmplitude::total_mass(const Vec3& center) const {
  return profile_for(center).total;
}

Vec3 PositionAmplitude::centroid() const {
  if (centroid_) return *centroid_;
  if (compact_) {
    centroid_ = bump_center_;
    return *centroid_;
  }
  if (isotropic_) {
    centroid_ = Vec3{0.0, 0.0, 0.0};
    return *centroid_;
  }
  // coefficient-weighted channel centers as the seed, then one density
  // moment pass about the seed
  double wsum = 0.0;
  Vec3 seed{0.0, 0.0, 0.0};
  for (const RadialChannel& ch : channels_) {
    const double w = std::abs(ch.coef);
    seed = seed + ch.center * w;
    wsum += w;
  }
  if (wsum > 0.0) seed = seed / wsum;

  const MassProfile& prof = profile_for(seed);
  const bool axisym = axisym_z_ && seed.x == 0.0 && seed.y == 0.0;
  const int n_u = 48;
  const int n_phi = axisym ? 1 : 32;
  const GaussLegendre& gr = gauss_legendre(8);
  const GaussLegendre& gu = gauss_legendre(n_u);
  Vec3 moment{0.0, 0.0, 0.0};
  for (std::size_t panel = 0; panel + 1 < prof.breaks.size(); ++panel) {
    const double r_lo = prof.breaks[panel], r_hi = prof.breaks[panel + 1];
    for (int ir = 0; ir < 8; ++ir) {
      const double r = 0.5 * (r_lo + r_hi) + 0.5 * (r_hi - r_lo) * gr.x[ir];
      const double wr = 0.5 * (r_hi - r_lo) * gr.w[ir] * r * r;
      for (int iu = 0; iu < n_u; ++iu) {
        const double u = gu.x[iu];
        const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double wu = gu.w[iu];
        for (int ip = 0; ip < n_phi; ++ip) {
          const double phi = 2.0 * kPi * ip / n_phi;
          const Vec3 offset{r * su * std::cos(phi), r * su * std::sin(phi), r * u};
          const double w = wr * wu * (2.0 * kPi / n_phi) * density(seed + offset);
          if (axisym) {
            moment.z += w * offset.z;
          } else {
            moment = moment + offset * w;
          }
        }
      }
    }
  }
  centroid_ = seed + moment / std::max(prof.total, 1e-300);
  if (axisym_z_) {
    centroid_->x = 0.0;
    centroid_->y = 0.0;
  }
  return *centroid_;
}

double PositionAmplitude::plancherel_residual() const {
  if (compact_) return 0.0;
  const double total = total_mass(centroid());
  return std::abs(total - momentum_norm2_) / momentum_norm2_;
}

double PositionAmplitude::noise_floor() const {
  return std::max(10.0 * plancherel_residual(), 1e-14);
}

// ---------------------------------------------------------------------------
// Tail operations
// ---------------------------------------------------------------------------

double tail_mass(const PositionAmplitude& phi, const Vec3& center, double R) {
  if (!phi.compactly_supported() && phi.convention() != PositionConvention::half_density) {
    throw PreconditionError("tail_mass requires the half_density convention");
  }
  if (std::abs(phi.momentum_norm2() - 1.0) > 1e-6) {
    throw PreconditionError("tail_mass requires a normalized source (momentum norm^2 = " +
                            std::to_string(phi.momentum_norm2()) + ")");
  }
  if (!(R >= 0.0)) throw PreconditionError("tail_mass requires R >= 0");
  const double resid = phi.plancherel_residual();
  if (resid > 1e-3) {
    throw AccuracyError(
        "tail_mass: position-space total misses the momentum norm (Plancherel residual " +
        std::to_string(resid) + ")",
        resid, resid);
  }
  const double total = phi.total_mass(center);
  const double inside = phi.mass_within(center, R);
  return std::clamp(1.0 - inside / total, 0.0, 1.0);
}

double epsilon_support_radius(const PositionAmplitude& phi, const Vec3& center, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("epsilon_support_radius requires 0 < eps < 1");
  }
  const double floor_v = phi.noise_floor();
  if (eps < floor_v) {
    throw FloorError("epsilon_support_radius: eps below the quadrature floor " +
                         std::to_string(floor_v),
                     floor_v);
  }
  const double total = phi.total_mass(center);
  if (tail_mass(phi, center, 0.0) <= eps) return 0.0;
  // bisection on the monotone cumulative profile
  double lo = 0.0;
  double hi = phi.design_radius();
  if (phi.compactly_supported()) hi = std::max(hi, 1.0);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double tail = 1.0 - phi.mass_within(center, mid) / total;
    if (tail <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-9 * (1.0 + hi)) break;
  }
  return hi;
}

TailReport paley_wiener_probe(const MomentumAmplitude& f, const std::vector<double>& radii) {
  const MomentumAmplitude fn = normalize(f, Measure::lorentz);
  const PositionAmplitude phi =
      PositionAmplitude::transform(fn, 0.0, PositionConvention::half_density);
  TailReport report;
  report.center = phi.centroid();
  report.floor = phi.noise_floor();
  report.label = f.label;
  for (double r : radii) {
    const double t = tail_mass(phi, report.center, r);
    report.radii.push_back(r);
    report.tail.push_back(t);
    report.floor_flag.push_back(t <= report.floor);
  }
  // log-linear tail slope over the above-floor window
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    if (report.tail[i] > report.floor && report.tail[i] > 0.0) {
      const double x = report.radii[i], y = std::log(report.tail[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  report.log_slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return report;
}

}  // namespace lcq
