// SPDX-License-Identifier: Apache-2.0
#include "lcq/dirac.hpp"

#include <cmath>

#include "lcq/errors.hpp"

namespace lcq::dirac {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

Mat4 zero4() {
  Mat4 m{};
  return m;
}

}  // namespace

const Mat4& gamma0() {
  static const Mat4 g = [] {
    Mat4 m = zero4();
    m[0][0] = 1.0;
    m[1][1] = 1.0;
    m[2][2] = -1.0;
    m[3][3] = -1.0;
    return m;
  }();
  return g;
}

const Mat4& gamma(int i) {
  static const std::array<Mat4, 3> g = [] {
    std::array<Mat4, 3> out{zero4(), zero4(), zero4()};
    // sigma_x, sigma_y, sigma_z in the off-diagonal blocks:
    // gamma^i = [[0, sigma_i], [-sigma_i, 0]]
    out[0][0][3] = 1.0;
    out[0][1][2] = 1.0;
    out[0][2][1] = -1.0;
    out[0][3][0] = -1.0;

    out[1][0][3] = -I;
    out[1][1][2] = I;
    out[1][2][1] = I;
    out[1][3][0] = -I;

    out[2][0][2] = 1.0;
    out[2][1][3] = -1.0;
    out[2][2][0] = -1.0;
    out[2][3][1] = 1.0;
    return out;
  }();
  return g[i - 1];
}

Mat4 slash_onshell(const Vec3& p, double mass) {
  const double p0 = std::sqrt(p.norm2() + mass * mass);
  Mat4 m = zero4();
  const double px = p.x, py = p.y, pz = p.z;
  // assembled directly from the block structure to avoid 4x4 products
  m[0][0] = p0;
  m[1][1] = p0;
  m[2][2] = -p0;
  m[3][3] = -p0;
  // -p . gamma (vector part)
  m[0][2] = -pz;
  m[0][3] = -(px - I * py);
  m[1][2] = -(px + I * py);
  m[1][3] = pz;
  m[2][0] = pz;
  m[2][1] = px - I * py;
  m[3][0] = px + I * py;
  m[3][1] = -pz;
  return m;
}

namespace {

// (sigma . p) chi for the two-component spinor chi_zeta
std::array<cd, 2> sigma_dot_p(const Vec3& p, int zeta_sign) {
  if (zeta_sign > 0) return {cd{p.z, 0.0}, cd{p.x, 0.0} + I * p.y};
  return {cd{p.x, 0.0} - I * p.y, cd{-p.z, 0.0}};
}

}  // namespace

Spinor u_plus(const Vec3& p, int zeta_sign, double mass) {
  if (!(mass > 0.0)) throw InvalidMassError("dirac spinors require m > 0");
  const double eps = std::sqrt(p.norm2() + mass * mass);
  const double norm = 1.0 / std::sqrt(2.0 * mass * (eps + mass));
  const auto sp = sigma_dot_p(p, zeta_sign);
  Spinor u{};
  if (zeta_sign > 0) {
    u[0] = (eps + mass) * norm;
  } else {
    u[1] = (eps + mass) * norm;
  }
  u[2] = sp[0] * norm;
  u[3] = sp[1] * norm;
  return u;
}

Spinor u_minus(const Vec3& p, int zeta_sign, double mass) {
  if (!(mass > 0.0)) throw InvalidMassError("dirac spinors require m > 0");
  const double eps = std::sqrt(p.norm2() + mass * mass);
  const double norm = 1.0 / std::sqrt(2.0 * mass * (eps + mass));
  const auto sp = sigma_dot_p(p, zeta_sign);
  Spinor u{};
  u[0] = sp[0] * norm;
  u[1] = sp[1] * norm;
  if (zeta_sign > 0) {
    u[2] = (eps + mass) * norm;
  } else {
    u[3] = (eps + mass) * norm;
  }
  return u;
}

Spinor adjoint(const Spinor& u) {
  Spinor row;
  row[0] = std::conj(u[0]);
  row[1] = std::conj(u[1]);
  row[2] = -std::conj(u[2]);
  row[3] = -std::conj(u[3]);
  return row;
}

double completeness_residual(const Vec3& p, double mass, int energy_sign) {
  const Mat4 slash = slash_onshell(p, mass);
  Mat4 target = zero4();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) target[a][b] = slash[a][b] / mass;
    target[a][a] += energy_sign > 0 ? 1.0 : -1.0;
  }
  Mat4 sum = zero4();
  for (int zeta : {+1, -1}) {
    const Spinor u = energy_sign > 0 ? u_plus(p, zeta, mass) : u_minus(p, zeta, mass);
    const Spinor ubar = adjoint(u);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) sum[a][b] += 2.0 * u[a] * ubar[b];
    }
  }
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      worst = std::max(worst, std::abs(sum[a][b] - target[a][b]));
    }
  }
  return worst;
}

Mat4 positive_energy_kernel(const Vec3& p, double mass) {
  const double eps = std::sqrt(p.norm2() + mass * mass);
  const Mat4 slash = slash_onshell(p, mass);
  const Mat4& g0 = gamma0();
  Mat4 out = zero4();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      cd acc{0.0, 0.0};
      for (int c = 0; c < 4; ++c) acc += g0[a][c] * slash[c][b];
      if (a == b) acc += g0[a][a] * mass;
      out[a][b] = acc / (2.0 * eps);
    }
  }
  return out;
}

}  // namespace lcq::dirac
