// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcq/inner_product.hpp"
#include "lcq/position.hpp"

namespace lcq {

/// Ball of radius T around the observer at the preparation slice: the
/// region whose information can reach the observer within duration T.
struct AccessRegion {
  Vec3 observer;
  double T = 0.0;
};

/// Orthonormal pair prepared for finite-time analysis: half-density
/// transforms, shared noise floor, and the default (coverage-optimal)
/// observer position.
struct PositionPair {
  PositionAmplitude phi1;
  PositionAmplitude phi2;
  double floor = 0.0;
  complexd full_overlap{0.0, 0.0};
  Vec3 default_observer;
  double joint_support_radius = 0.0;  // eps-support of the pair about the observer
  double support_eps = 1e-3;
};

/// Builds the pair (states must already be orthonormal within 1e-6 under
/// the kind-appropriate inner product; throws PreconditionError otherwise).
PositionPair make_position_pair(const MomentumAmplitude& s1, const MomentumAmplitude& s2,
                                double t0 = 0.0, double support_eps = 1e-3);

/// G_ij(T) = integral over the access ball of conj(phi_i) phi_j. Hermitian
/// by construction; the full-space limit reproduces the identity for an
/// orthonormal pair.
GramMatrix truncated_gram(const PositionPair& pair, const AccessRegion& region);

struct Confusion {
  std::array<double, 4> c{};  // C11, C12, C21, C22 with C_ij = |G_ij|^2
  double eps = 0.0;           // 1 - (C11 + C22)/2
  std::array<double, 2> inconclusive{};
};

/// Confusion matrix of the access-region measurement model. Validates that
/// G is Hermitian and within the [0, I] band to band_tol (ModelViolationError).
Confusion confusion_matrix(const GramMatrix& g, double band_tol = 1e-6);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t window_begin = 0;  // index range into the sample list
  std::size_t window_end = 0;
};

struct DistinguishReport {
  std::vector<double> t_samples;
  std::vector<GramMatrix> gram;
  std::vector<Confusion> confusion;
  std::vector<bool> floor_flag;  // eps at/below the quadrature floor
  double floor = 0.0;
  Vec3 observer;
  std::optional<DecayFit> fit;
  std::string label1, label2;
};

/// eps(T) over an ascending duration grid, evaluated in one cumulative pass
/// (panel boundaries aligned to the grid), plus the tail decay fit when
/// enough above-floor samples exist.
DistinguishReport error_curve(const PositionPair& pair, const Vec3& observer,
                              const std::vector<double>& t_grid);

/// Least squares of log(eps) vs T over the automatically selected tail
/// window: the last max(4, half) of the above-floor samples. Throws
/// FitWindowError with fewer than 4 usable samples.
DecayFit decay_fit(const std::vector<double>& t_samples, const std::vector<double>& eps,
                   double floor);

std::string distinguish_report_csv(const DistinguishReport& report);
std::string distinguish_report_json(const DistinguishReport& report);

}  // namespace lcq
