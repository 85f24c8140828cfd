// SPDX-License-Identifier: Apache-2.0
#include "lcq/simd/simd.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace lcq::simd {

namespace {

void exp_v_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void sincos_v_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void conj_dot_scalar(const double* w, const double* ar, const double* ai,
                     const double* br, const double* bi, std::size_t n,
                     double* re, double* im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
    si += w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
  }
  *re = sr;
  *im = si;
}

inline double sinc_ball(double z) {
  if (std::abs(z) < 1e-3) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

void radial_phase_sum_scalar(const double* p, const double* p0, const double* wg,
                             std::size_t n, double r, double t, double* re,
                             double* im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double j0 = sinc_ball(p[i] * r);
    const double phase = -t * p0[i];
    const double a = wg[i] * j0;
    sr += a * std::cos(phase);
    si += a * std::sin(phase);
  }
  *re = sr;
  *im = si;
}

constexpr Ops kScalarOps{
    "scalar", exp_v_scalar, sincos_v_scalar, conj_dot_scalar, radial_phase_sum_scalar,
};

std::atomic<const Ops*> g_active{nullptr};

const Ops* detect() {
  const Ops* lane = &kScalarOps;
  if (const Ops* avx2 = avx2_ops()) lane = avx2;
  if (const char* env = std::getenv("LIGHTCONE_QSD_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) lane = &kScalarOps;
    if (std::strcmp(env, "avx2") == 0 && avx2_ops()) lane = avx2_ops();
  }
  return lane;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

const Ops& ops() {
  const Ops* lane = g_active.load(std::memory_order_acquire);
  if (!lane) {
    lane = detect();
    g_active.store(lane, std::memory_order_release);
  }
  return *lane;
}

void force_lane(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active.store(&kScalarOps, std::memory_order_release);
  } else if (std::strcmp(name, "avx2") == 0 && avx2_ops()) {
    g_active.store(avx2_ops(), std::memory_order_release);
  } else {
    g_active.store(detect(), std::memory_order_release);
  }
}

}  // namespace lcq::simd
