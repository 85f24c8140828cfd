// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lcq/field_kind.hpp"
#include "lcq/four_vector.hpp"
#include "lcq/vec3.hpp"

namespace lcq {

using complexd = std::complex<double>;

/// Closed-form radial profile g(p) evaluated at |p - momentum_center|.
/// Real-valued; the families keep both the momentum-space quadrature and
/// the position-space transforms analytic enough for independent oracles.
struct Profile {
  enum class Family {
    gaussian,    // exp(-p^2 / (4 sigma^2))
    energy_exp,  // exp(-rate * sqrt(p^2 + m^2))
    power_iso,   // (1 + (p/scale)^2)^(-power/2)
    ir_test,     // (sigma/p) exp(-p^2/(4 sigma^2)); infrared-divergent probe
  };
  Family family = Family::gaussian;
  double sigma = 1.0;
  double rate = 1.0;
  double scale = 1.0;
  double power = 4.0;

  double eval(double p, double mass) const;
  void eval_batch(const double* p, double* out, std::size_t n, double mass) const;
  /// Radius beyond which p^2 g(p)^2 stays below eps (quadrature domain sizing).
  double tail_radius(double eps, double mass) const;
  /// Exponent alpha with g ~ p^alpha as p -> 0.
  double small_k_exponent() const;
  DecayHint decay_class() const;
};

/// One product term of an amplitude:
///   coef * g(|p - momentum_center|) * P_ell(p_hat . axis) * exp(-i p . shift)
/// With spin weights attached for Dirac (zeta = +-1/2 over u^(+)) and
/// photon (helicity s = +-1) kinds.
struct Term {
  complexd coef{1.0, 0.0};
  Profile profile;
  int ell = 0;
  Vec3 axis{0.0, 0.0, 1.0};
  Vec3 momentum_center{0.0, 0.0, 0.0};
  Vec3 shift{0.0, 0.0, 0.0};
  std::array<complexd, 2> spin{{{1.0, 0.0}, {0.0, 0.0}}};
};

/// Tabulated amplitude on a uniform grid with trilinear interpolation;
/// zero outside the box. Momentum-space operations only.
struct Tabulated3D {
  Vec3 origin;
  double spacing = 1.0;
  int nx = 0, ny = 0, nz = 0;
  std::vector<complexd> values;  // x fastest

  complexd eval(const Vec3& p) const;
};

/// An evaluable one-particle amplitude on the positive-energy mass shell.
struct MomentumAmplitude {
  FieldKind kind;
  DecayHint decay_hint = DecayHint::gaussian;
  std::string label;
  std::vector<Term> terms;
  std::optional<Tabulated3D> table;

  /// Pushforward by a boost: evaluates the base amplitude at the inverse-
  /// boosted on-shell momentum. Scalar kind only.
  double rapidity = 0.0;
  Axis boost_axis = Axis::Z;

  // --- scalar evaluation ---------------------------------------------
  complexd eval_scalar(const Vec3& p) const;
  void eval_scalar_batch(const double* px, const double* py, const double* pz,
                         complexd* out, std::size_t n) const;

  // --- multi-component evaluation -------------------------------------
  std::array<complexd, 4> eval_dirac(const Vec3& p) const;
  std::array<complexd, 2> eval_photon(const Vec3& p) const;

  /// Quadrature ball radius containing the amplitude mass up to tail_eps.
  double suggested_pmax(double tail_eps) const;
  /// True when every term is a pure radial profile (no Legendre factor,
  /// no momentum center, no shift, no boost): enables 1D reduction.
  bool isotropic() const;
  /// True when the shift phases are the only anisotropy (position
  /// transforms reduce to shifted radial integrals).
  bool shifted_radial() const;
  double small_k_exponent() const;

  MomentumAmplitude scaled(complexd factor) const;
  /// this + factor * other (term-list concatenation; same kind required).
  MomentumAmplitude plus_scaled(const MomentumAmplitude& other, complexd factor) const;

  Vec3 origin_corner() const;  // bounding radius helper for tabulated payloads
};

// --- family constructors -----------------------------------------------

/// Isotropic Gaussian packet, optionally displaced in momentum by `center`
/// and carrying the position displacement phase exp(-i p . shift).
MomentumAmplitude gaussian_packet(const FieldKind& kind, double sigma,
                                  const Vec3& center = {}, const Vec3& shift = {},
                                  const std::string& label = "gaussian");

/// exp(-rate * p0(p)), the near-exponentially-localized stand-in family.
MomentumAmplitude energy_exp_packet(const FieldKind& kind, double rate,
                                    const Vec3& shift = {},
                                    const std::string& label = "energy_exp");

// --- JSON serialization --------------------------------------------------

/// Strict (unknown keys rejected) round-trip serialization of the family
/// document. Throws SchemaError with a field path on invalid input.
std::string amplitude_to_json(const MomentumAmplitude& amp);
MomentumAmplitude amplitude_from_json(const std::string& json_text);

}  // namespace lcq
