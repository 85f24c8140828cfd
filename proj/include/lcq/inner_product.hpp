// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcq/amplitude.hpp"

namespace lcq {

/// n x n matrix of invariant inner products plus provenance metadata.
struct GramMatrix {
  int n = 0;
  std::vector<complexd> entries;  // row-major
  std::vector<std::string> labels;
  Measure measure = Measure::lorentz;
  std::string region = "full_space";

  complexd at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
  complexd& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
  double hermiticity_residual() const;
  std::vector<double> eigenvalues() const;
};

/// Scalar mass-shell inner product, measure d3p / (2 p0); Hermitian in its
/// arguments. Throws KindMismatchError unless both amplitudes are scalar
/// with the same mass, AccuracyError when quadrature stalls.
complexd lorentz_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                               double tol = 1e-9);

/// Flat-measure d3p counterpart (the non-relativistic comparison mode).
complexd galilean_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                                double tol = 1e-9);

/// Positive-energy spinor form: integral of fbar (slash(p) + m) g over
/// d3p / (2 eps(p)). The +m sign is fixed so the induced Gram on
/// positive-energy amplitudes is positive semi-definite with the spinor
/// normalization 2 sum_zeta u u~ = slash(p)/m + 1.
complexd dirac_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                             double tol = 1e-9);

/// Helicity-summed massless shell product, measure d3k / (2|k|). Throws
/// DivergenceError when the declared small-k behaviour makes the integrand
/// non-integrable at the origin.
complexd photon_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                              double tol = 1e-9);

/// Kind dispatch: scalar uses the requested measure, Dirac and photon use
/// their own forms (galilean is only defined for scalars).
complexd inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                       Measure measure, double tol = 1e-9);

double norm_squared(const MomentumAmplitude& f, Measure measure, double tol = 1e-9);

/// Unit-norm rescale under the chosen measure. Throws DegenerateStateError
/// for zero or non-finite norm.
MomentumAmplitude normalize(const MomentumAmplitude& f, Measure measure, double tol = 1e-10);

/// Gram-Schmidt under the invariant measure; returns a pair with unit norms
/// and |<1|2>| <= 1e-8 (re-checked by quadrature). Throws DependenceError
/// when |<f|g>| / (|f||g|) > 1 - 1e-10.
std::pair<MomentumAmplitude, MomentumAmplitude> make_orthogonal_pair(
    const MomentumAmplitude& f, const MomentumAmplitude& g, Measure measure,
    double tol = 1e-10);

GramMatrix gram_matrix(const std::vector<MomentumAmplitude>& states, Measure measure,
                       double tol = 1e-9);

/// Outcome probabilities |<phi_j|phi_i>|^2 for an orthonormal channel set,
/// plus the trailing remainder probability for the complement projector.
/// Throws PreconditionError (naming the offending pair) when the states are
/// not orthonormal within `ortho_tol`.
std::vector<double> outcome_probabilities(const std::vector<MomentumAmplitude>& states,
                                          int input_index, Measure measure = Measure::lorentz,
                                          double tol = 1e-9, double ortho_tol = 1e-8);

}  // namespace lcq
