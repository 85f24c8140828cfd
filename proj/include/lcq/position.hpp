// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcq/amplitude.hpp"

namespace lcq {

enum class PositionConvention {
  /// Plain mass-shell Fourier transform exp(-i(t p0 - p.x)), no prefactor.
  paper_fourier,
  /// (2 pi)^(-3/2) (2 p0)^(-1/2) weighting: |phi|^2 is a localization
  /// density and the position norm matches the Lorentz momentum norm.
  half_density,
};

struct PositionEval {
  std::vector<complexd> components;  // 1 for scalar, 3 for the photon vector field
  bool low_confidence = false;       // evaluated beyond the design radius
};

struct TailReport {
  std::vector<double> radii;
  std::vector<double> tail;  // tail_mass(R)
  std::vector<bool> floor_flag;
  Vec3 center;
  double floor = 0.0;
  double log_slope = 0.0;  // d log(tail)/dR over the above-floor window
  std::string label;
};

std::string tail_report_csv(const TailReport& report);

/// Position-space amplitude evaluated by spherically reduced (or
/// partial-wave) quadrature over the mass shell. A fixed radial node table
/// sized for `design_radius` backs every evaluation; points beyond it come
/// back flagged low-confidence rather than silently degraded.
class PositionAmplitude {
public:
  /// Transform of a scalar or photon mass-shell amplitude at time t0.
  /// design_radius <= 0 picks a radius from the decay class (past the
  /// density floor for massive sources). Dirac sources are not supported.
  static PositionAmplitude transform(const MomentumAmplitude& source, double t0,
                                     PositionConvention convention,
                                     double design_radius = -1.0);

  /// Compactly supported contrast state of the flat-measure model:
  /// psi = N (1 - (r/r0)^2)^3 inside r0 around `center`, exactly zero
  /// outside. Unit norm by construction.
  static PositionAmplitude compact_bump(double r0, const Vec3& center = {});

  PositionEval eval(const Vec3& x) const;
  double density(const Vec3& x) const;  // sum over components of |.|^2

  int components() const;
  bool compactly_supported() const { return compact_; }
  double t0() const { return t0_; }
  PositionConvention convention() const { return convention_; }
  const std::string& source_label() const { return label_; }
  double design_radius() const { return design_radius_; }
  bool axisymmetric_z() const { return axisym_z_; }
  bool isotropic() const { return isotropic_; }
  /// Lorentz norm^2 of the momentum-space source (1 for the compact bump).
  double momentum_norm2() const { return momentum_norm2_; }

  /// Cumulative localization mass inside the ball |x - center| <= R
  /// (half_density or compact bump only). Profiles are cached per center.
  double mass_within(const Vec3& center, double R) const;
  double total_mass(const Vec3& center) const;
  /// Density-weighted centroid (the default localization center).
  Vec3 centroid() const;
  /// |position mass - momentum norm^2| / momentum norm^2 at the default
  /// centroid profile.
  double plancherel_residual() const;
  /// Quadrature noise floor: 10 x Plancherel residual.
  double noise_floor() const;

private:
  struct RadialChannel {
    complexd coef;  // term coefficient with 4 pi and i^ell folded in
    int ell = 0;
    Vec3 axis{0.0, 0.0, 1.0};
    Vec3 center{0.0, 0.0, 0.0};
    int helicity = 0;  // +-1 for photon channels
    std::vector<double> p, p0, wg;   // node table (weights real)
    std::vector<complexd> wg_phase;  // wg * exp(-i t p0), for ell > 0 sums
  };

  struct MassProfile {
    std::vector<double> breaks;
    std::vector<double> cum;
    double total = 0.0;
  };

  void build_channels(const MomentumAmplitude& src, double tail_eps);
  complexd eval_scalar_channels(const Vec3& x, bool* low_conf) const;
  std::array<complexd, 3> eval_photon_vector(const Vec3& x, bool* low_conf) const;
  MassProfile build_profile(const Vec3& center) const;
  const MassProfile& profile_for(const Vec3& center) const;
  double panel_mass(const Vec3& center, double r_lo, double r_hi) const;

  bool compact_ = false;
  double bump_r0_ = 1.0;
  Vec3 bump_center_{};
  double bump_norm_ = 1.0;

  FieldKind kind_;
  double t0_ = 0.0;
  PositionConvention convention_ = PositionConvention::half_density;
  std::string label_;
  double design_radius_ = 0.0;
  double momentum_norm2_ = 1.0;
  bool axisym_z_ = true;
  bool isotropic_ = true;
  std::vector<RadialChannel> channels_;

  mutable std::map<std::array<double, 3>, MassProfile> profiles_;
  mutable std::optional<Vec3> centroid_;
};

/// Fraction of the localization mass outside |x - center| > R. Requires a
/// normalized half_density (or compact) amplitude; the position total is
/// cross-checked against the momentum norm (Plancherel) and an AccuracyError
/// is raised when the residual exceeds 1e-3.
double tail_mass(const PositionAmplitude& phi, const Vec3& center, double R);

/// Smallest radius with tail_mass <= eps, by monotone bisection on the
/// cached cumulative profile. Throws FloorError (with the achievable
/// minimum) when eps lies below the noise floor.
double epsilon_support_radius(const PositionAmplitude& phi, const Vec3& center, double eps);

/// Normalizes f, transforms it at t0 = 0 (half_density), and reports tail
/// masses at the requested radii: the numeric face of the mass-shell
/// non-localizability obstruction.
TailReport paley_wiener_probe(const MomentumAmplitude& f, const std::vector<double>& radii);

}  // namespace lcq
