// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variants of the inner-loop kernels. exp and sin/cos use the
// classic Cody-Waite reduction plus Cephes minimax polynomials; accuracy is
// a few ulp over the argument ranges the library produces (|x| <~ 1e6 for
// trig phases), which the equivalence tests pin down against libm.
#include "lcq/simd/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

namespace lcq::simd {
namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079631090164184570e+00;
constexpr double kPio2Md = 1.58932547122958567343e-08;
constexpr double kPio2Lo = 6.12323399573676603587e-17;

constexpr double kLog2e = 1.44269504088896338700e+00;
constexpr double kLn2Hi = 6.93147167563438415527e-01;
constexpr double kLn2Lo = 1.29965068938898886183e-08;

// sin(x) = x + x*z*S(z), cos(x) = 1 - z/2 + z*z*C(z), z = x^2, |x| <= pi/4.
constexpr double kSin[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                            2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                            8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                            -2.75573141792967388112e-7,  2.48015872888517179954e-5,
                            -1.38888888888730564116e-3,  4.16666666666665929218e-2};

// exp(x) = 1 + 2*x*P(x^2) / (Q(x^2) - x*P(x^2)), |x| <= ln2/2.
constexpr double kExpP[3] = {1.26177193074810590878e-4, 3.02994407707441961300e-2,
                             9.99999999999999999910e-1};
constexpr double kExpQ[4] = {3.00198505138664455042e-6, 2.52448340349684104192e-3,
                             2.27265548208155028766e-1, 2.00000000000000000005e0};

inline __m256d poly6(__m256d z, const double* c) {
  __m256d r = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(c[i]));
  return r;
}

// 4-lane sincos; quadrant bookkeeping done in doubles to stay in ymm.
inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Md), r);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Lo), r);

  // q = n mod 4 in {0,1,2,3}
  const __m256d quarter = _mm256_mul_pd(n, _mm256_set1_pd(0.25));
  const __m256d q = _mm256_fnmadd_pd(
      _mm256_floor_pd(quarter), _mm256_set1_pd(4.0), n);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sin_r =
      _mm256_fmadd_pd(_mm256_mul_pd(poly6(z, kSin), z), r, r);
  __m256d cos_r = _mm256_fmadd_pd(poly6(z, kCos), _mm256_mul_pd(z, z),
                                  _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5),
                                                   _mm256_set1_pd(1.0)));

  const __m256d m1 = _mm256_cmp_pd(q, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d m2 = _mm256_cmp_pd(q, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d m3 = _mm256_cmp_pd(q, _mm256_set1_pd(3.0), _CMP_EQ_OQ);
  const __m256d swap = _mm256_or_pd(m1, m3);
  const __m256d sign_s = _mm256_and_pd(_mm256_or_pd(m2, m3), _mm256_set1_pd(-0.0));
  const __m256d sign_c = _mm256_and_pd(_mm256_or_pd(m1, m2), _mm256_set1_pd(-0.0));

  const __m256d s_base = _mm256_blendv_pd(sin_r, cos_r, swap);
  const __m256d c_base = _mm256_blendv_pd(cos_r, sin_r, swap);
  *s_out = _mm256_xor_pd(s_base, sign_s);
  *c_out = _mm256_xor_pd(c_base, sign_c);
}

inline __m256d exp4(__m256d x) {
  const __m256d xc = _mm256_max_pd(_mm256_set1_pd(-745.0),
                                   _mm256_min_pd(_mm256_set1_pd(709.0), x));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Hi), xc);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(kExpP[0]);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(kExpP[1]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(kExpP[2]));
  p = _mm256_mul_pd(p, r);
  __m256d qq = _mm256_set1_pd(kExpQ[0]);
  qq = _mm256_fmadd_pd(qq, z, _mm256_set1_pd(kExpQ[1]));
  qq = _mm256_fmadd_pd(qq, z, _mm256_set1_pd(kExpQ[2]));
  qq = _mm256_fmadd_pd(qq, z, _mm256_set1_pd(kExpQ[3]));
  const __m256d e = _mm256_add_pd(
      _mm256_set1_pd(1.0),
      _mm256_div_pd(_mm256_add_pd(p, p), _mm256_sub_pd(qq, p)));

  // scale by 2^k
  const __m128i k32 = _mm256_cvtpd_epi32(k);
  const __m256i k64 = _mm256_cvtepi32_epi64(k32);
  const __m256i bits = _mm256_slli_epi64(
      _mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  const __m256d scale = _mm256_castsi256_pd(bits);
  __m256d out = _mm256_mul_pd(e, scale);

  // the 2^k scaling does not produce subnormals; flush that range to zero
  const __m256d tiny = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
  return _mm256_andnot_pd(tiny, out);
}

void exp_v_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void sincos_v_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + i), &vs, &vc);
    _mm256_storeu_pd(s + i, vs);
    _mm256_storeu_pd(c + i, vc);
  }
  for (; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
}

void conj_dot_avx2(const double* w, const double* ar, const double* ai,
                   const double* br, const double* bi, std::size_t n,
                   double* re, double* im) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d var = _mm256_loadu_pd(ar + i);
    const __m256d vai = _mm256_loadu_pd(ai + i);
    const __m256d vbr = _mm256_loadu_pd(br + i);
    const __m256d vbi = _mm256_loadu_pd(bi + i);
    const __m256d pr = _mm256_fmadd_pd(var, vbr, _mm256_mul_pd(vai, vbi));
    const __m256d pi = _mm256_fmsub_pd(var, vbi, _mm256_mul_pd(vai, vbr));
    sr = _mm256_fmadd_pd(vw, pr, sr);
    si = _mm256_fmadd_pd(vw, pi, si);
  }
  double tr = hsum(sr), ti = hsum(si);
  for (; i < n; ++i) {
    tr += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
    ti += w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
  }
  *re = tr;
  *im = ti;
}

void radial_phase_sum_avx2(const double* p, const double* p0, const double* wg,
                           std::size_t n, double r, double t, double* re,
                           double* im) {
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vmt = _mm256_set1_pd(-t);
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vp = _mm256_loadu_pd(p + i);
    const __m256d z = _mm256_mul_pd(vp, vr);
    __m256d sz, cz;
    sincos4(z, &sz, &cz);
    // j0(z) = sin(z)/z with a series fallback near zero
    const __m256d z2 = _mm256_mul_pd(z, z);
    const __m256d series = _mm256_fmadd_pd(
        z2,
        _mm256_fmadd_pd(z2, _mm256_set1_pd(1.0 / 120.0), _mm256_set1_pd(-1.0 / 6.0)),
        _mm256_set1_pd(1.0));
    const __m256d small = _mm256_cmp_pd(
        _mm256_andnot_pd(_mm256_set1_pd(-0.0), z), _mm256_set1_pd(1e-3), _CMP_LT_OQ);
    const __m256d j0 = _mm256_blendv_pd(_mm256_div_pd(sz, z), series, small);

    __m256d sp, cp;
    sincos4(_mm256_mul_pd(vmt, _mm256_loadu_pd(p0 + i)), &sp, &cp);
    const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(wg + i), j0);
    sr = _mm256_fmadd_pd(a, cp, sr);
    si = _mm256_fmadd_pd(a, sp, si);
  }
  double tr = hsum(sr), ti = hsum(si);
  for (; i < n; ++i) {
    const double z = p[i] * r;
    const double z2 = z * z;
    const double j0 =
        std::abs(z) < 1e-3 ? 1.0 - z2 / 6.0 + z2 * z2 / 120.0 : std::sin(z) / z;
    const double phase = -t * p0[i];
    const double a = wg[i] * j0;
    tr += a * std::cos(phase);
    ti += a * std::sin(phase);
  }
  *re = tr;
  *im = ti;
}

const Ops kAvx2Ops{
    "avx2", exp_v_avx2, sincos_v_avx2, conj_dot_avx2, radial_phase_sum_avx2,
};

bool cpu_has_avx2_fma() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops* table = cpu_has_avx2_fma() ? &kAvx2Ops : nullptr;
  return table;
}

}  // namespace lcq::simd

#else  // non-x86: no AVX2 lane

namespace lcq::simd {
const Ops* avx2_ops() { return nullptr; }
}  // namespace lcq::simd

#endif
