// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lcq/amplitude.hpp"
#include "lcq/dirac.hpp"
#include "lcq/errors.hpp"
#include "lcq/inner_product.hpp"
#include "lcq/polarization.hpp"
#include "lcq/quadrature.hpp"
#include "support/grid_oracle.hpp"

using namespace lcq;

namespace {

MomentumAmplitude with_ell(MomentumAmplitude amp, int ell) {
  amp.terms[0].ell = ell;
  amp.label += "_l" + std::to_string(ell);
  return amp;
}

}  // namespace

TEST_CASE("field kind invariants") {
  CHECK(FieldKind::photon().mass == 0.0);
  CHECK(FieldKind::photon().components() == 2);
  CHECK(FieldKind::dirac(1.0).components() == 4);
  CHECK(FieldKind::scalar(0.0).components() == 1);
  CHECK_THROWS_AS(FieldKind::dirac(0.0), InvalidMassError);
  CHECK_THROWS_AS(FieldKind::scalar(-1.0), InvalidMassError);
}

TEST_CASE("amplitude JSON round trip preserves evaluations") {
  MomentumAmplitude amp = gaussian_packet(FieldKind::scalar(1.0), 0.8, {0.3, 0.0, 1.1},
                                          {0.0, 0.5, -2.0}, "roundtrip");
  amp = amp.plus_scaled(energy_exp_packet(FieldKind::scalar(1.0), 1.4, {}, "partner"),
                        {0.25, -0.75});
  const MomentumAmplitude back = amplitude_from_json(amplitude_to_json(amp));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-4.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 p{c(rng), c(rng), c(rng)};
    const complexd a = amp.eval_scalar(p);
    const complexd b = back.eval_scalar(p);
    CHECK(std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a)));
  }
  CHECK(back.label == amp.label);
  CHECK(back.decay_hint == amp.decay_hint);
}

TEST_CASE("amplitude schema is strict") {
  CHECK_THROWS_AS(amplitude_from_json(R"({"kind":"scalar","mass":1,"typo":1,)"
                                      R"("terms":[{"profile":{"family":"gaussian"}}]})"),
                  SchemaError);
  CHECK_THROWS_AS(amplitude_from_json(R"({"kind":"scalar","mass":1,)"
                                      R"("terms":[{"profile":{"family":"gaussian"},)"
                                      R"("ell":1,"momentum_center":[1,0,0]}]})"),
                  SchemaError);
  CHECK_THROWS_AS(amplitude_from_json(R"({"kind":"photon","mass":0.5,)"
                                      R"("terms":[{"profile":{"family":"gaussian"}}]})"),
                  SchemaError);
  CHECK_THROWS_AS(amplitude_from_json("not json"), SchemaError);
}

TEST_CASE("normalized gaussian has unit lorentz norm") {
  const MomentumAmplitude f =
      normalize(gaussian_packet(FieldKind::scalar(1.0), 1.0), Measure::lorentz);
  CHECK(lorentz_inner_product(f, f).real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("odd Legendre factor is orthogonal to the even packet") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const MomentumAmplitude g = with_ell(f, 1);
  const complexd v = lorentz_inner_product(f, g);
  CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("momentum-displaced gaussians match the cartesian oracle") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const MomentumAmplitude g =
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {0.0, 0.0, 1.5}, {}, "displaced");
  const complexd value = lorentz_inner_product(f, g, 1e-10);
  const complexd oracle = testing::cartesian_ip_oracle(f, g, Measure::lorentz, 12.0, 160);
  CHECK(std::abs(value - oracle) <= 1e-8 * std::abs(oracle));
  // frozen from the oracle above (the packets overlap at half displacement)
  CHECK(value.real() == doctest::Approx(2.90391438004950).epsilon(2e-7));
  CHECK(std::abs(value.imag()) <= 1e-10);
}

TEST_CASE("galilean norm of a gaussian matches the closed form") {
  const double sigma = 0.7;
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), sigma);
  const double n2 = norm_squared(f, Measure::galilean);
  const double exact = std::pow(2.0 * M_PI, 1.5) * sigma * sigma * sigma;
  CHECK(n2 == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("galilean and lorentz values differ for the same state") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const double lorentz = norm_squared(f, Measure::lorentz);
  const double galilean = norm_squared(f, Measure::galilean);
  CHECK(galilean > lorentz);  // the 1/(2 p0) weight only removes mass
  CHECK(lorentz > 0.0);
}

TEST_CASE("normalize is homogeneous and rechecks") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.2);
  const MomentumAmplitude n1 = normalize(f, Measure::lorentz);
  const MomentumAmplitude n2 = normalize(f.scaled(2.0), Measure::lorentz);
  const Vec3 probe{0.4, -0.2, 1.0};
  CHECK(std::abs(n1.eval_scalar(probe) - n2.eval_scalar(probe)) <= 1e-12);
  CHECK(norm_squared(n1, Measure::lorentz) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(normalize(f.scaled(0.0), Measure::lorentz), DegenerateStateError);
}

TEST_CASE("gram-schmidt pair construction") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const MomentumAmplitude g =
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {}, {0.0, 0.0, 1.0}, "shifted");
  const auto [e1, e2] = make_orthogonal_pair(f, g, Measure::lorentz);
  CHECK(std::abs(inner_product(e1, e2, Measure::lorentz, 1e-10)) <= 1e-8);
  CHECK(norm_squared(e1, Measure::lorentz) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(norm_squared(e2, Measure::lorentz) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(make_orthogonal_pair(f, f.scaled(0.7), Measure::lorentz),
                  DependenceError);
  // an already-orthonormal pair passes through unchanged
  const auto [r1, r2] = make_orthogonal_pair(e1, e2, Measure::lorentz);
  const Vec3 probe{0.2, 0.1, -0.4};
  CHECK(std::abs(r1.eval_scalar(probe) - e1.eval_scalar(probe)) <= 1e-7);
  CHECK(std::abs(r2.eval_scalar(probe) - e2.eval_scalar(probe)) <= 1e-7);
}

// --- Dirac ------------------------------------------------------------------

TEST_CASE("rest-frame spinor completeness is the gamma0 projector") {
  const double m = 1.3;
  CHECK(dirac::completeness_residual({0, 0, 0}, m, +1) <= 1e-14);
  // explicit check against (gamma0 + 1)
  Mat4 sum{};
  for (int zeta : {+1, -1}) {
    const Spinor u = dirac::u_plus({0, 0, 0}, zeta, m);
    const Spinor ubar = dirac::adjoint(u);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) sum[a][b] += 2.0 * u[a] * ubar[b];
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double expected = (a == b) ? (a < 2 ? 2.0 : 0.0) : 0.0;
      CHECK(std::abs(sum[a][b] - expected) <= 1e-14);
    }
  }
}

TEST_CASE("spinor completeness at random momenta") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{c(rng), c(rng), c(rng)};
    CHECK(dirac::completeness_residual(p, 1.0, +1) <= 1e-12);
    CHECK(dirac::completeness_residual(p, 1.0, -1) <= 1e-12);
  }
  CHECK_THROWS_AS(dirac::u_plus({1, 0, 0}, +1, 0.0), InvalidMassError);
}

TEST_CASE("spin-up and spin-down spinors are independent") {
  const Vec3 p{0.3, -1.2, 0.8};
  const Spinor up = dirac::u_plus(p, +1, 1.0);
  const Spinor dn = dirac::u_plus(p, -1, 1.0);
  const Spinor up_bar = dirac::adjoint(up);
  complexd cross{0.0, 0.0}, same{0.0, 0.0};
  for (int a = 0; a < 4; ++a) {
    cross += up_bar[a] * dn[a];
    same += up_bar[a] * up[a];
  }
  CHECK(std::abs(cross) <= 1e-14);
  CHECK(same.real() == doctest::Approx(1.0).epsilon(1e-13));
}

namespace {

MomentumAmplitude dirac_state(double sigma, int zeta, const Vec3& shift = {},
                              const std::string& label = "dirac") {
  MomentumAmplitude amp = gaussian_packet(FieldKind::dirac(1.0), sigma, {}, shift, label);
  amp.terms[0].spin = zeta > 0 ? std::array<complexd, 2>{{{1, 0}, {0, 0}}}
                               : std::array<complexd, 2>{{{0, 0}, {1, 0}}};
  return amp;
}

}  // namespace

TEST_CASE("dirac inner product: positivity, spin orthogonality, normalization") {
  const MomentumAmplitude up = dirac_state(1.0, +1);
  const MomentumAmplitude dn = dirac_state(1.0, -1);
  const complexd self = dirac_inner_product(up, up);
  CHECK(self.real() > 0.0);
  CHECK(std::abs(self.imag()) <= 1e-10 * self.real());
  CHECK(std::abs(dirac_inner_product(up, dn)) <= 1e-10 * self.real());
  const MomentumAmplitude n = normalize(up, Measure::lorentz);
  CHECK(dirac_inner_product(n, n).real() == doctest::Approx(1.0).epsilon(1e-8));
  // positive-energy Gram is PSD
  const GramMatrix g = gram_matrix(
      {normalize(up, Measure::lorentz), normalize(dn, Measure::lorentz),
       normalize(dirac_state(0.8, +1, {0, 0, 1.0}, "shifted"), Measure::lorentz)},
      Measure::lorentz);
  for (double eig : g.eigenvalues()) CHECK(eig >= -1e-8);
}

// --- photon -----------------------------------------------------------------

TEST_CASE("polarization basis at k = z matches the reference convention") {
  const PolarizationBasis b = photon_polarization_basis({0, 0, 2.5});
  CHECK(std::abs(b.w_plus[0] - complexd{1.0 / std::sqrt(2.0), 0.0}) <= 1e-15);
  CHECK(std::abs(b.w_plus[1] - complexd{0.0, 1.0 / std::sqrt(2.0)}) <= 1e-15);
  CHECK(std::abs(b.w_plus[2]) <= 1e-15);
}

TEST_CASE("polarization basis: unit, transverse, helicity-orthogonal") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Vec3 k{c(rng), c(rng), c(rng)};
    if (k.norm() < 1e-3) k.z += 1.0;
    for (PhotonFrame frame : {PhotonFrame::min_axis, PhotonFrame::spherical}) {
      if (frame == PhotonFrame::spherical && std::hypot(k.x, k.y) < 1e-6) continue;
      const PolarizationBasis b = photon_polarization_basis(k, frame);
      double norm2 = 0.0;
      complexd dot_k{0.0, 0.0}, cross{0.0, 0.0};
      const double kc[3] = {k.x, k.y, k.z};
      for (int c3 = 0; c3 < 3; ++c3) {
        norm2 += std::norm(b.w_plus[c3]);
        dot_k += b.w_plus[c3] * kc[c3];
        cross += b.w_plus[c3] * std::conj(b.w_minus[c3]);
      }
      CHECK(std::abs(norm2 - 1.0) <= 1e-14);
      CHECK(std::abs(dot_k) <= 1e-14 * k.norm());
      CHECK(std::abs(cross) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(photon_polarization_basis({0, 0, 0}), UndefinedDirectionError);
}

TEST_CASE("min-axis frame is continuous away from its singular tie planes") {
  const Vec3 k0{0.3, 0.7, 0.55};  // safely away from |k_i| = |k_j|
  const PolarizationBasis b0 = photon_polarization_basis(k0);
  const PolarizationBasis b1 = photon_polarization_basis(k0 + Vec3{1e-7, -1e-7, 1e-7});
  for (int c = 0; c < 3; ++c) {
    CHECK(std::abs(b0.w_plus[c] - b1.w_plus[c]) <= 1e-5);
  }
}

namespace {

MomentumAmplitude photon_state(double sigma, int helicity, const Vec3& shift = {},
                               const std::string& label = "photon") {
  MomentumAmplitude amp = gaussian_packet(FieldKind::photon(), sigma, {}, shift, label);
  amp.terms[0].spin = helicity > 0 ? std::array<complexd, 2>{{{1, 0}, {0, 0}}}
                                   : std::array<complexd, 2>{{{0, 0}, {1, 0}}};
  return amp;
}

// fixed-grid reduction for axisymmetric photon pairs (shifts along z):
// sum_s int conj(f_s) g_s k^2 dk du dphi / (2k)
complexd photon_pair_oracle(const MomentumAmplitude& f, const MomentumAmplitude& g,
                            double p_max) {
  const GaussLegendre& gu = gauss_legendre(96);
  const int panels = 400, per = 6;
  const GaussLegendre& gr = gauss_legendre(per);
  complexd acc{0.0, 0.0};
  for (int panel = 0; panel < panels; ++panel) {
    const double a = p_max * panel / panels, b = p_max * (panel + 1) / panels;
    for (int ir = 0; ir < per; ++ir) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * gr.x[ir];
      const double wr = 0.5 * (b - a) * gr.w[ir] * r * r / (2.0 * r);
      for (int iu = 0; iu < 96; ++iu) {
        const double u = gu.x[iu];
        const Vec3 k{r * std::sqrt(1.0 - u * u), 0.0, r * u};
        const auto fv = f.eval_photon(k);
        const auto gv = g.eval_photon(k);
        acc += wr * gu.w[iu] * 2.0 * M_PI *
               (std::conj(fv[0]) * gv[0] + std::conj(fv[1]) * gv[1]);
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("photon inner product: helicity orthogonality and normalization") {
  const MomentumAmplitude plus = photon_state(1.0, +1);
  const MomentumAmplitude minus = photon_state(1.0, -1);
  const double self = norm_squared(plus, Measure::lorentz);
  CHECK(std::abs(photon_inner_product(plus, minus)) <= 1e-10 * self);
  const MomentumAmplitude n = normalize(plus, Measure::lorentz);
  CHECK(photon_inner_product(n, n).real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("displaced photon packets match the fixed-grid oracle") {
  const MomentumAmplitude f = photon_state(1.0, +1);
  const MomentumAmplitude g = photon_state(1.0, +1, {0.0, 0.0, 1.2}, "shifted");
  const complexd value = photon_inner_product(f, g, 1e-10);
  const complexd oracle = photon_pair_oracle(f, g, 14.0);
  CHECK(std::abs(value - oracle) <= 1e-8 * std::abs(oracle));
}

TEST_CASE("infrared-divergent photon amplitude is rejected") {
  MomentumAmplitude bad = photon_state(1.0, +1, {}, "ir_divergent");
  bad.terms[0].profile.family = Profile::Family::ir_test;
  CHECK_THROWS_AS(photon_inner_product(bad, bad), DivergenceError);
}

// --- outcome probabilities ---------------------------------------------------

TEST_CASE("outcome probabilities reproduce the identity for orthonormal sets") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const MomentumAmplitude g =
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {}, {0.0, 0.0, 1.4}, "shifted");
  const auto [e1, e2] = make_orthogonal_pair(f, g, Measure::lorentz);
  const auto p1 = outcome_probabilities({e1, e2}, 0);
  CHECK(p1[0] == doctest::Approx(1.0).epsilon(2e-8));
  CHECK(p1[1] <= 2e-8);
  CHECK(p1[2] <= 2e-8);
  const auto p2 = outcome_probabilities({e1, e2}, 1);
  CHECK(p2[1] == doctest::Approx(1.0).epsilon(2e-8));
  CHECK(p2[0] <= 2e-8);

  // three-state set: add an odd state, orthogonal by parity
  const MomentumAmplitude odd =
      normalize(with_ell(gaussian_packet(FieldKind::scalar(1.0), 1.0), 1), Measure::lorentz);
  // Gram-Schmidt the full triple for safety
  std::vector<MomentumAmplitude> triple{e1, e2, odd};
  for (int i = 0; i < 3; ++i) {
    const auto row = outcome_probabilities(triple, i, Measure::lorentz, 1e-9, 1e-7);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(row[j] - (i == j ? 1.0 : 0.0)) <= 2e-7);
    }
  }
}

TEST_CASE("non-orthonormal input names the offending pair") {
  const MomentumAmplitude f =
      normalize(gaussian_packet(FieldKind::scalar(1.0), 1.0), Measure::lorentz);
  const MomentumAmplitude g = normalize(
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {}, {0.0, 0.0, 0.5}, "near"),
      Measure::lorentz);
  CHECK_THROWS_AS((void)outcome_probabilities({f, g}, 0), PreconditionError);
}

// --- invariants ---------------------------------------------------------------

TEST_CASE("hermitian symmetry and Cauchy-Schwarz") {
  const MomentumAmplitude a = gaussian_packet(FieldKind::scalar(1.0), 0.9);
  MomentumAmplitude b =
      gaussian_packet(FieldKind::scalar(1.0), 1.3, {0.2, 0.0, 0.4}, {0.1, 0.0, -0.6}, "b");
  b.terms[0].coef = {0.3, 0.8};
  const complexd ab = lorentz_inner_product(a, b, 1e-10);
  const complexd ba = lorentz_inner_product(b, a, 1e-10);
  CHECK(std::abs(ab - std::conj(ba)) <= 1e-10);
  const double na = norm_squared(a, Measure::lorentz);
  const double nb = norm_squared(b, Measure::lorentz);
  CHECK(std::norm(ab) <= na * nb * (1.0 + 1e-9));
}

TEST_CASE("boost invariance of the scalar inner product") {
  const MomentumAmplitude f =
      normalize(gaussian_packet(FieldKind::scalar(1.0), 1.0), Measure::lorentz);
  const MomentumAmplitude g = normalize(
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {0.0, 0.0, 0.8}, {}, "displaced"),
      Measure::lorentz);
  const complexd base = lorentz_inner_product(f, g, 1e-9);
  for (double psi : {0.5, 2.0}) {
    MomentumAmplitude fb = f;
    MomentumAmplitude gb = g;
    fb.rapidity = gb.rapidity = psi;
    fb.boost_axis = gb.boost_axis = Axis::Z;
    const complexd boosted = lorentz_inner_product(fb, gb, 1e-8);
    CHECK(std::abs(boosted - base) <= 1e-6);
  }
}

TEST_CASE("kind and mass mismatches are rejected") {
  const MomentumAmplitude s = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const MomentumAmplitude s2 = gaussian_packet(FieldKind::scalar(2.0), 1.0);
  const MomentumAmplitude d = dirac_state(1.0, +1);
  CHECK_THROWS_AS(lorentz_inner_product(s, s2), KindMismatchError);
  CHECK_THROWS_AS(lorentz_inner_product(s, d), KindMismatchError);
  CHECK_THROWS_AS(dirac_inner_product(s, s), KindMismatchError);
  CHECK_THROWS_AS(galilean_inner_product(d, d), KindMismatchError);
}

TEST_CASE("tabulated amplitude: trilinear interpolation and quadrature") {
  Tabulated3D table;
  table.origin = {-6.0, -6.0, -6.0};
  table.spacing = 0.25;
  table.nx = table.ny = table.nz = 49;
  table.values.resize(static_cast<std::size_t>(49) * 49 * 49);
  for (int iz = 0; iz < 49; ++iz) {
    for (int iy = 0; iy < 49; ++iy) {
      for (int ix = 0; ix < 49; ++ix) {
        const double x = -6.0 + 0.25 * ix, y = -6.0 + 0.25 * iy, z = -6.0 + 0.25 * iz;
        table.values[(static_cast<std::size_t>(iz) * 49 + iy) * 49 + ix] =
            std::exp(-(x * x + y * y + z * z) / 4.0);
      }
    }
  }
  MomentumAmplitude amp;
  amp.kind = FieldKind::scalar(1.0);
  amp.label = "table";
  amp.decay_hint = DecayHint::gaussian;
  amp.table = table;
  // grid values reproduced exactly, midpoints to interpolation accuracy
  CHECK(std::abs(amp.eval_scalar({0.0, 0.0, 0.0}) - complexd{1.0, 0.0}) <= 1e-14);
  CHECK(std::abs(amp.eval_scalar({0.125, 0.0, 0.0}).real() -
                 std::exp(-0.125 * 0.125 / 4.0)) <= 3e-3);
  // norm close to the smooth gaussian norm (interpolation-level agreement)
  const MomentumAmplitude smooth = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const double nt = norm_squared(amp, Measure::lorentz, 1e-7);
  const double ns = norm_squared(smooth, Measure::lorentz, 1e-9);
  CHECK(std::abs(nt - ns) / ns <= 5e-3);
}

TEST_CASE("quadrature failure carries the best estimate") {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(1.0), 1.0);
  const MomentumAmplitude g =
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {}, {0.0, 4000.0, 0.0}, "far");
  try {
    (void)lorentz_inner_product(f, g, 1e-12);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(std::isfinite(e.abs_error));
    CHECK(std::isfinite(e.best_estimate.real()));
  }
}
