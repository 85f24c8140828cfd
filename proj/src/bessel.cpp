// SPDX-License-Identifier: Apache-2.0
#include "lcq/bessel.hpp"

#include <cmath>
#include <limits>

#include "lcq/errors.hpp"

namespace lcq::bessel {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kPi = 3.14159265358979323846;

// Compensated accumulator; the J1/Y1 series are alternating with large
// intermediate terms, so the summation error must not scale with the
// largest term.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// J1 power series: (x/2) * sum_k (-q)^k / (k!(k+1)!), q = x^2/4.
double j1_series(double x) {
  const double q = 0.25 * x * x;
  KahanSum sum;
  double term = 1.0;
  sum.add(term);
  for (int k = 0; k < 80; ++k) {
    term *= -q / ((k + 1.0) * (k + 2.0));
    sum.add(term);
    if (std::abs(term) < 1e-18 * std::abs(sum.s) + 1e-300) break;
  }
  return 0.5 * x * sum.s;
}

// Y1 series: (2/pi) ln(x/2) J1 - 2/(pi x) - (x/2pi) sum_k (-q)^k
// (H_k + H_{k+1} - 2*gamma) / (k!(k+1)!).
double y1_series(double x) {
  const double q = 0.25 * x * x;
  KahanSum sum;
  double fac = 1.0;  // q^k / (k!(k+1)!)
  double hk = 0.0;   // H_k
  double hk1 = 1.0;  // H_{k+1}
  double sign = 1.0;
  sum.add(hk + hk1 - 2.0 * kEulerGamma);
  for (int k = 1; k < 80; ++k) {
    fac *= q / (k * (k + 1.0));
    sign = -sign;
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1.0);
    const double term = sign * (hk + hk1 - 2.0 * kEulerGamma) * fac;
    sum.add(term);
    if (std::abs(term) < 1e-18 * (std::abs(sum.s) + 1e-30)) break;
  }
  return (2.0 / kPi) * std::log(0.5 * x) * j1_series(x) - 2.0 / (kPi * x) -
         (x / (2.0 * kPi)) * sum.s;
}

// Hankel asymptotic pair for nu = 1: amplitude/phase form with the
// (mu - (2j-1)^2) product coefficients, truncated at the smallest term.
void hankel_pq(double x, double* p_out, double* q_out) {
  constexpr double mu = 4.0;
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0;
  double q = 0.0;
  double r = 1.0;  // a_m / x^m with the running product
  double prev = std::numeric_limits<double>::max();
  for (int m = 1; m <= 40; ++m) {
    const double c = mu - (2.0 * m - 1.0) * (2.0 * m - 1.0);
    r *= c * inv8x / m;
    if (std::abs(r) >= prev) break;  // divergence onset
    prev = std::abs(r);
    // sign pattern (-1)^k applies per pair: m = 2k -> P, m = 2k+1 -> Q
    const int k = m / 2;
    const double signed_r = ((k % 2) ? -r : r);
    if (m % 2 == 0) {
      p += signed_r;
    } else {
      q += signed_r;
    }
    if (std::abs(r) < 1e-18) break;
  }
  *p_out = p;
  *q_out = q;
}

double j1_large(double x) {
  double p, q;
  hankel_pq(x, &p, &q);
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double y1_large(double x) {
  double p, q;
  hankel_pq(x, &p, &q);
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

double i1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= q / ((k + 1.0) * (k + 2.0));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 0.5 * x * sum;
}

// K1 power series (x < 2): ln(x/2) I1 + 1/x - (x/4) sum_k q^k
// (H_k + H_{k+1} - 2*gamma) / (k!(k+1)!); no cancellation in this range.
double k1_series(double x) {
  const double q = 0.25 * x * x;
  double fac = 1.0;
  double hk = 0.0;
  double hk1 = 1.0;
  double sum = hk + hk1 - 2.0 * kEulerGamma;
  for (int k = 1; k < 60; ++k) {
    fac *= q / (k * (k + 1.0));
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1.0);
    const double term = (hk + hk1 - 2.0 * kEulerGamma) * fac;
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) break;
  }
  return std::log(0.5 * x) * i1_series(x) + 1.0 / x - 0.25 * x * sum;
}

// Chebyshev expansion of e^x K1(x) sqrt(x) in s = 4/x - 1 over x >= 2,
// fitted to ~1e-17; own fit, checked against the series at the seam.
constexpr double kK1eCheb[24] = {
    2.72062619048444265246e+00,  1.03923736576817235533e-01,
    -2.85781685962277921115e-03, 1.95215518471351619830e-04,
    -1.93619797416608300817e-05, 2.40648494783721698524e-06,
    -3.50196060308781255723e-07, 5.74108412545004947244e-08,
    -1.03457624656780967915e-08, 2.01504975519703465939e-09,
    -4.19035475934192541845e-10, 9.21831518760531460414e-11,
    -2.12996783842779092206e-11, 5.13963967348234320830e-12,
    -1.28917396094982285376e-12, 3.34841966605224312098e-13,
    -8.97670518201014502647e-14, 2.47715442421959657365e-14,
    -7.01983708921472035159e-15, 2.03870316623974381942e-15,
    -6.05704727064018368041e-16, 1.83809357523613974618e-16,
    -5.68946284902428120701e-17, 1.79405104746816167744e-17,
};

double k1_scaled_large(double x) {
  const double s = 4.0 / x - 1.0;
  double b0 = 0.0, b1 = 0.0;
  for (int i = 23; i >= 1; --i) {
    const double tmp = 2.0 * s * b0 - b1 + kK1eCheb[i];
    b1 = b0;
    b0 = tmp;
  }
  const double f = s * b0 - b1 + 0.5 * kK1eCheb[0];
  return f / std::sqrt(x);
}

}  // namespace

double j1(double x, Path path) {
  if (!(x >= 0.0)) throw Error("bessel::j1 requires x >= 0");
  if (path == Path::series || (path == Path::automatic && x < jy_crossover)) {
    return j1_series(x);
  }
  return j1_large(x);
}

double y1(double x, Path path) {
  if (!(x > 0.0)) throw Error("bessel::y1 requires x > 0");
  if (path == Path::series || (path == Path::automatic && x < jy_crossover)) {
    return y1_series(x);
  }
  return y1_large(x);
}

double k1_scaled(double x, Path path) {
  if (!(x > 0.0)) throw Error("bessel::k1 requires x > 0");
  if (path == Path::series || (path == Path::automatic && x < k_crossover)) {
    return std::exp(x) * k1_series(x);
  }
  return k1_scaled_large(x);
}

double k1(double x, Path path) {
  if (!(x > 0.0)) throw Error("bessel::k1 requires x > 0");
  if (path == Path::series || (path == Path::automatic && x < k_crossover)) {
    return k1_series(x);
  }
  return std::exp(-x) * k1_scaled_large(x);
}

double i1(double x) {
  if (!(x >= 0.0)) throw Error("bessel::i1 requires x >= 0");
  return i1_series(x);
}

}  // namespace lcq::bessel
