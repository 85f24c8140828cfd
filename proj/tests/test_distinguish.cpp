// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lcq/distinguish.hpp"
#include "lcq/errors.hpp"
#include "lcq/protocol.hpp"

using namespace lcq;

namespace {

PositionPair gaussian_pair(double shift = 2.5, double mass = 1.0) {
  const MomentumAmplitude f = gaussian_packet(FieldKind::scalar(mass), 1.0, {}, {}, "g0");
  const MomentumAmplitude g =
      gaussian_packet(FieldKind::scalar(mass), 1.0, {}, {0.0, 0.0, shift}, "g1");
  const auto [e1, e2] = make_orthogonal_pair(f, g, Measure::lorentz);
  return make_position_pair(e1, e2, 0.0, 1e-3);
}

}  // namespace

TEST_CASE("confusion matrix arithmetic from a given gram matrix") {
  GramMatrix g;
  g.n = 2;
  g.entries = {complexd{0.9, 0.0}, complexd{0.1, 0.0}, complexd{0.1, 0.0},
               complexd{0.85, 0.0}};
  g.labels = {"a", "b"};
  const Confusion c = confusion_matrix(g, 1e-6);
  CHECK(c.c[0] == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(c.c[1] == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(c.c[2] == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(c.c[3] == doctest::Approx(0.7225).epsilon(1e-15));
  CHECK(c.eps == doctest::Approx(0.23375).epsilon(1e-15));
  CHECK(c.inconclusive[0] == doctest::Approx(1.0 - 0.81 - 0.01).epsilon(1e-12));
}

TEST_CASE("confusion matrix endpoints and band validation") {
  GramMatrix ident;
  ident.n = 2;
  ident.entries = {complexd{1, 0}, complexd{0, 0}, complexd{0, 0}, complexd{1, 0}};
  const Confusion ci = confusion_matrix(ident, 1e-9);
  CHECK(ci.eps == 0.0);
  CHECK(ci.c[0] == 1.0);

  GramMatrix zero;
  zero.n = 2;
  zero.entries = {complexd{0, 0}, complexd{0, 0}, complexd{0, 0}, complexd{0, 0}};
  const Confusion cz = confusion_matrix(zero, 1e-9);
  CHECK(cz.eps == 1.0);

  GramMatrix bad;
  bad.n = 2;
  bad.entries = {complexd{1.4, 0}, complexd{0, 0}, complexd{0, 0}, complexd{1, 0}};
  CHECK_THROWS_AS(confusion_matrix(bad, 1e-6), ModelViolationError);

  GramMatrix nonherm;
  nonherm.n = 2;
  nonherm.entries = {complexd{0.5, 0}, complexd{0.2, 0}, complexd{-0.2, 0},
                     complexd{0.5, 0}};
  CHECK_THROWS_AS(confusion_matrix(nonherm, 1e-6), ModelViolationError);
}

TEST_CASE("pair construction enforces orthonormality") {
  const MomentumAmplitude f =
      normalize(gaussian_packet(FieldKind::scalar(1.0), 1.0), Measure::lorentz);
  const MomentumAmplitude g = normalize(
      gaussian_packet(FieldKind::scalar(1.0), 1.0, {}, {0.0, 0.0, 0.4}, "near"),
      Measure::lorentz);
  CHECK_THROWS_AS(make_position_pair(f, g, 0.0, 1e-3), PreconditionError);
}

TEST_CASE("truncated gram: zero region, nesting, full-space limit") {
  const PositionPair pair = gaussian_pair();
  const Vec3 obs = pair.default_observer;

  const GramMatrix g0 = truncated_gram(pair, {obs, 0.0});
  CHECK(std::abs(g0.at(0, 0)) == 0.0);
  CHECK(std::abs(g0.at(0, 1)) == 0.0);

  const GramMatrix g2 = truncated_gram(pair, {obs, 2.0});
  const GramMatrix g4 = truncated_gram(pair, {obs, 4.0});
  CHECK(g2.at(0, 0).real() <= g4.at(0, 0).real() + 1e-12);
  CHECK(g2.at(1, 1).real() <= g4.at(1, 1).real() + 1e-12);
  CHECK(g2.hermiticity_residual() <= 1e-14);

  const double t_cover = pair.joint_support_radius +
                         epsilon_support_radius(pair.phi1, pair.phi1.centroid(), 1e-6);
  const GramMatrix gfull = truncated_gram(pair, {obs, t_cover});
  CHECK(std::abs(gfull.at(0, 0) - 1.0) <= 2e-4);
  CHECK(std::abs(gfull.at(1, 1) - 1.0) <= 2e-4);
  CHECK(std::abs(gfull.at(0, 1)) <= 2e-4);
}

TEST_CASE("error curve: monotone, correct endpoints, above floor") {
  const PositionPair pair = gaussian_pair();
  std::vector<double> grid{0.0};
  for (double t = 0.5; t <= 7.0; t += 0.5) grid.push_back(t);
  const DistinguishReport report = error_curve(pair, pair.default_observer, grid);

  CHECK(report.confusion.front().eps == 1.0);  // T = 0
  double prev = 2.0;
  for (std::size_t i = 0; i < report.t_samples.size(); ++i) {
    const double eps = report.confusion[i].eps;
    CHECK(eps <= prev + 1e-12);
    CHECK(eps >= -1e-12);
    prev = eps;
    CHECK(report.confusion[i].eps > report.floor);
    CHECK_FALSE(report.floor_flag[i]);
    // diagonal growth
    if (i > 0) {
      CHECK(report.gram[i].at(0, 0).real() + 1e-12 >=
            report.gram[i - 1].at(0, 0).real());
    }
  }
  CHECK(report.fit.has_value());
  CHECK(report.fit->slope < 0.0);
}

TEST_CASE("decay fit on synthetic data") {
  std::vector<double> t, eps;
  for (int i = 0; i <= 10; ++i) {
    t.push_back(0.5 * i);
    eps.push_back(std::exp(-2.0 * 0.5 * i));
  }
  const DecayFit fit = decay_fit(t, eps, 1e-12);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(fit.r_squared >= 0.999999);

  std::vector<double> flat(t.size(), 0.1);
  const DecayFit fit0 = decay_fit(t, flat, 1e-12);
  CHECK(std::abs(fit0.slope) <= 1e-12);
  CHECK(fit0.r_squared == doctest::Approx(1.0));

  CHECK_THROWS_AS(decay_fit({0.0, 1.0, 2.0}, {1.0, 0.5, 0.2}, 1e-12), FitWindowError);
  CHECK_THROWS_AS(decay_fit(t, std::vector<double>(t.size(), 1e-15), 1e-12),
                  FitWindowError);
}

TEST_CASE("error curve validates its grid") {
  const PositionPair pair = gaussian_pair();
  CHECK_THROWS_AS(error_curve(pair, pair.default_observer, {}), PreconditionError);
  CHECK_THROWS_AS(error_curve(pair, pair.default_observer, {1.0, 0.5}), PreconditionError);
  CHECK_THROWS_AS(error_curve(pair, pair.default_observer, {-1.0, 0.5}),
                  PreconditionError);
}

TEST_CASE("report serializations carry the contract columns") {
  const PositionPair pair = gaussian_pair();
  const DistinguishReport report =
      error_curve(pair, pair.default_observer, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
  const std::string csv = distinguish_report_csv(report);
  CHECK(csv.rfind("T,ReG11,ReG22,ReG12,ImG12,C11,C12,C21,C22,eps,floor_flag\n", 0) == 0);
  const std::string json = distinguish_report_json(report);
  CHECK(json.find("\"floor\":") != std::string::npos);
  CHECK(json.find("\"fit\":") != std::string::npos);
  CHECK(json.find("\"eps\":") != std::string::npos);
}

// --- protocol ----------------------------------------------------------------

TEST_CASE("protocol simulation: identity confusion gives zero errors") {
  const ProtocolStats stats =
      protocol_noise_sim({1.0, 0.0, 0.0, 1.0}, 10000, 7, InconclusivePolicy::discard);
  CHECK(stats.wrong == 0);
  CHECK(stats.inconclusive == 0);
  CHECK(stats.qber == 0.0);
  CHECK(stats.correct == 10000);
}

TEST_CASE("protocol simulation: all-inconclusive degenerates with a note") {
  const ProtocolStats stats =
      protocol_noise_sim({0.0, 0.0, 0.0, 0.0}, 500, 7, InconclusivePolicy::discard);
  CHECK(stats.degenerate);
  CHECK(stats.inconclusive == 500);
  CHECK(std::isnan(stats.qber));
  const std::string json = protocol_stats_json(stats);
  CHECK(json.find("\"degenerate\":true") != std::string::npos);
  CHECK(json.find("\"qber\":null") != std::string::npos);
}

TEST_CASE("protocol qber is binomially consistent with the analytic value") {
  const std::array<double, 4> c{0.81, 0.01, 0.01, 0.7225};
  const long long rounds = 100000;
  for (InconclusivePolicy policy : {InconclusivePolicy::discard, InconclusivePolicy::error}) {
    const ProtocolStats stats = protocol_noise_sim(c, rounds, 12345, policy);
    CHECK(stats.correct + stats.wrong + stats.inconclusive == rounds);
    const double p = stats.analytic_qber;
    const long long n = stats.correct + stats.wrong;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(stats.qber - p) <= 3.0 * sigma);
    CHECK(stats.qber_lo <= stats.qber);
    CHECK(stats.qber <= stats.qber_hi);
    if (policy == InconclusivePolicy::error) {
      CHECK(stats.effective_error_rate >= stats.qber * 0.5);
    }
  }
}

TEST_CASE("protocol runs are seed-deterministic") {
  const std::array<double, 4> c{0.9, 0.05, 0.02, 0.88};
  const ProtocolStats a = protocol_noise_sim(c, 20000, 99, InconclusivePolicy::discard);
  const ProtocolStats b = protocol_noise_sim(c, 20000, 99, InconclusivePolicy::discard);
  CHECK(protocol_stats_json(a) == protocol_stats_json(b));
  const ProtocolStats other = protocol_noise_sim(c, 20000, 100, InconclusivePolicy::discard);
  CHECK(a.wrong != other.wrong);  // different seed, different stream
}

TEST_CASE("protocol input validation") {
  CHECK_THROWS_AS(protocol_noise_sim({1, 0, 0, 1}, 0, 1, InconclusivePolicy::discard),
                  PreconditionError);
  CHECK_THROWS_AS(protocol_noise_sim({0.9, 0.2, 0, 1}, 10, 1, InconclusivePolicy::discard),
                  PreconditionError);
  CHECK_THROWS_AS(
      protocol_noise_sim({-0.1, 0.2, 0, 1}, 10, 1, InconclusivePolicy::discard),
      PreconditionError);
}
