// SPDX-License-Identifier: Apache-2.0
#include "lcq/inner_product.hpp"

#include <cmath>

#include "lcq/dirac.hpp"
#include "lcq/errors.hpp"
#include "lcq/linalg.hpp"
#include "lcq/quadrature.hpp"

namespace lcq {

double GramMatrix::hermiticity_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

std::vector<double> GramMatrix::eigenvalues() const {
  return hermitian_eigenvalues(entries, n);
}

namespace {

// True when the pair integrand is exactly axisymmetric about z, enabling
// the n_phi = 1 reduction.
bool axisym_z(const MomentumAmplitude& a) {
  if (a.table) return false;
  if (a.rapidity != 0.0 && a.boost_axis != Axis::Z) return false;
  for (const Term& t : a.terms) {
    auto on_z = [](const Vec3& v) { return v.x == 0.0 && v.y == 0.0; };
    if (!on_z(t.momentum_center) || !on_z(t.shift)) return false;
    if (t.ell != 0 && !on_z(t.axis)) return false;
  }
  return true;
}

void check_same_kind(const MomentumAmplitude& f, const MomentumAmplitude& g,
                     FieldType expected, const char* what) {
  if (f.kind.type != expected || g.kind.type != expected) {
    throw KindMismatchError(std::string(what) + ": amplitude kinds must both be " +
                            FieldKind{expected, f.kind.mass}.name() + " (got " +
                            f.kind.name() + ", " + g.kind.name() + ")");
  }
  if (f.kind.mass != g.kind.mass) {
    throw KindMismatchError(std::string(what) + ": masses differ (" +
                            std::to_string(f.kind.mass) + " vs " +
                            std::to_string(g.kind.mass) + ")");
  }
}

enum class MeasureKind { scalar_lorentz, scalar_galilean, dirac_form, photon_form };

complexd mass_shell_integral(const MomentumAmplitude& f, const MomentumAmplitude& g,
                             MeasureKind mk, double tol, double scale_hint,
                             const char* what) {
  const double mass = f.kind.mass;
  const double tail = std::min(tol, 1e-8) * 0.1;
  BallIntegralOptions opt;
  opt.p_max = std::max(f.suggested_pmax(tail), g.suggested_pmax(tail));
  opt.tol_rel = tol;
  opt.scale_hint = scale_hint;
  opt.axisymmetric = axisym_z(f) && axisym_z(g);
  opt.what = what;

  BallIntegrand integrand;
  switch (mk) {
    case MeasureKind::scalar_lorentz:
    case MeasureKind::scalar_galilean: {
      const bool lorentz = mk == MeasureKind::scalar_lorentz;
      integrand = [&f, &g, mass, lorentz](const SphericalGrid& grid, double* re, double* im) {
        const std::size_t n = grid.size();
        std::vector<complexd> fv(n), gv(n);
        f.eval_scalar_batch(grid.px.data(), grid.py.data(), grid.pz.data(), fv.data(), n);
        g.eval_scalar_batch(grid.px.data(), grid.py.data(), grid.pz.data(), gv.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
          const complexd v = std::conj(fv[i]) * gv[i];
          const double meas =
              lorentz ? 0.5 / std::sqrt(grid.r[i] * grid.r[i] + mass * mass) : 1.0;
          re[i] = v.real() * meas;
          im[i] = v.imag() * meas;
        }
      };
      break;
    }
    case MeasureKind::dirac_form: {
      integrand = [&f, &g, mass](const SphericalGrid& grid, double* re, double* im) {
        const std::size_t n = grid.size();
        for (std::size_t i = 0; i < n; ++i) {
          const Vec3 p{grid.px[i], grid.py[i], grid.pz[i]};
          const auto fv = f.eval_dirac(p);
          const auto gv = g.eval_dirac(p);
          const Mat4 kern = dirac::positive_energy_kernel(p, mass);
          complexd acc{0.0, 0.0};
          for (int a = 0; a < 4; ++a) {
            complexd row{0.0, 0.0};
            for (int b = 0; b < 4; ++b) row += kern[a][b] * gv[b];
            acc += std::conj(fv[a]) * row;
          }
          re[i] = acc.real();
          im[i] = acc.imag();
        }
      };
      break;
    }
    case MeasureKind::photon_form: {
      integrand = [&f, &g](const SphericalGrid& grid, double* re, double* im) {
        const std::size_t n = grid.size();
        for (std::size_t i = 0; i < n; ++i) {
          const Vec3 p{grid.px[i], grid.py[i], grid.pz[i]};
          const auto fv = f.eval_photon(p);
          const auto gv = g.eval_photon(p);
          const complexd v = std::conj(fv[0]) * gv[0] + std::conj(fv[1]) * gv[1];
          const double meas = 0.5 / std::max(grid.r[i], 1e-300);
          re[i] = v.real() * meas;
          im[i] = v.imag() * meas;
        }
      };
      break;
    }
  }
  return integrate_ball(integrand, opt).value;
}

// Self-overlap with a value-relative tolerance (positive by construction).
double self_norm2(const MomentumAmplitude& f, MeasureKind mk, double tol) {
  const complexd v = mass_shell_integral(f, f, mk, tol, 1e-30, "norm");
  return v.real();
}

MeasureKind measure_kind_of(const MomentumAmplitude& f, Measure measure) {
  switch (f.kind.type) {
    case FieldType::Scalar:
      return measure == Measure::lorentz ? MeasureKind::scalar_lorentz
                                         : MeasureKind::scalar_galilean;
    case FieldType::Dirac:
      if (measure == Measure::galilean) {
        throw PreconditionError("galilean measure is only defined for scalar amplitudes");
      }
      return MeasureKind::dirac_form;
    case FieldType::Photon:
      if (measure == Measure::galilean) {
        throw PreconditionError("galilean measure is only defined for scalar amplitudes");
      }
      return MeasureKind::photon_form;
  }
  return MeasureKind::scalar_lorentz;
}

void check_photon_infrared(const MomentumAmplitude& f, const MomentumAmplitude& g) {
  const double a = f.small_k_exponent() + g.small_k_exponent();
  if (a <= -2.0) {
    throw DivergenceError(
        "photon inner product: integrand ~ k^" + std::to_string(1.0 + a) +
        " near k = 0 is not integrable under the d3k/2|k| measure");
  }
}

complexd cross_product_value(const MomentumAmplitude& f, const MomentumAmplitude& g,
                             MeasureKind mk, double tol, const char* what) {
  const double nf = self_norm2(f, mk, std::max(tol, 1e-10));
  const double ng = self_norm2(g, mk, std::max(tol, 1e-10));
  const double scale = std::max(nf, ng);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DegenerateStateError(std::string(what) + ": operand with zero or non-finite norm");
  }
  return mass_shell_integral(f, g, mk, tol, scale, what);
}

}  // namespace

complexd lorentz_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                               double tol) {
  check_same_kind(f, g, FieldType::Scalar, "lorentz_inner_product");
  return cross_product_value(f, g, MeasureKind::scalar_lorentz, tol, "lorentz_inner_product");
}

complexd galilean_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                                double tol) {
  check_same_kind(f, g, FieldType::Scalar, "galilean_inner_product");
  return cross_product_value(f, g, MeasureKind::scalar_galilean, tol,
                             "galilean_inner_product");
}

complexd dirac_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                             double tol) {
  check_same_kind(f, g, FieldType::Dirac, "dirac_inner_product");
  return cross_product_value(f, g, MeasureKind::dirac_form, tol, "dirac_inner_product");
}

complexd photon_inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                              double tol) {
  check_same_kind(f, g, FieldType::Photon, "photon_inner_product");
  check_photon_infrared(f, g);
  return cross_product_value(f, g, MeasureKind::photon_form, tol, "photon_inner_product");
}

complexd inner_product(const MomentumAmplitude& f, const MomentumAmplitude& g,
                       Measure measure, double tol) {
  if (f.kind.type != g.kind.type) {
    throw KindMismatchError("inner_product: kinds differ (" + f.kind.name() + " vs " +
                            g.kind.name() + ")");
  }
  switch (f.kind.type) {
    case FieldType::Scalar:
      return measure == Measure::lorentz ? lorentz_inner_product(f, g, tol)
                                         : galilean_inner_product(f, g, tol);
    case FieldType::Dirac:
      (void)measure_kind_of(f, measure);
      return dirac_inner_product(f, g, tol);
    case FieldType::Photon:
      (void)measure_kind_of(f, measure);
      return photon_inner_product(f, g, tol);
  }
  throw Error("unreachable kind");
}

double norm_squared(const MomentumAmplitude& f, Measure measure, double tol) {
  if (f.kind.type == FieldType::Photon) check_photon_infrared(f, f);
  return self_norm2(f, measure_kind_of(f, measure), tol);
}

MomentumAmplitude normalize(const MomentumAmplitude& f, Measure measure, double tol) {
  const double n2 = norm_squared(f, measure, tol);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw DegenerateStateError("normalize: state '" + f.label +
                               "' has zero or non-finite norm (norm^2 = " +
                               std::to_string(n2) + ")");
  }
  return f.scaled(1.0 / std::sqrt(n2));
}

std::pair<MomentumAmplitude, MomentumAmplitude> make_orthogonal_pair(
    const MomentumAmplitude& f, const MomentumAmplitude& g, Measure measure, double tol) {
  MomentumAmplitude fn = normalize(f, measure, tol);
  MomentumAmplitude gn = normalize(g, measure, tol);
  const complexd c = inner_product(fn, gn, measure, tol);
  if (std::abs(c) > 1.0 - 1e-10) {
    throw DependenceError("make_orthogonal_pair: states '" + f.label + "' and '" + g.label +
                          "' are numerically linearly dependent (|overlap| = " +
                          std::to_string(std::abs(c)) + ")");
  }
  MomentumAmplitude g_orth = normalize(gn.plus_scaled(fn, -c), measure, tol);
  g_orth.label = g.label + "_orth";
  const complexd check = inner_product(fn, g_orth, measure, std::min(tol, 1e-10));
  if (std::abs(check) > 1e-8) {
    throw AccuracyError("make_orthogonal_pair: residual overlap above 1e-8", check,
                        std::abs(check));
  }
  return {fn, g_orth};
}

GramMatrix gram_matrix(const std::vector<MomentumAmplitude>& states, Measure measure,
                       double tol) {
  GramMatrix g;
  g.n = static_cast<int>(states.size());
  g.entries.assign(static_cast<std::size_t>(g.n) * g.n, {0.0, 0.0});
  g.measure = measure;
  for (const auto& s : states) g.labels.push_back(s.label);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i; j < g.n; ++j) {
      const complexd v = inner_product(states[i], states[j], measure, tol);
      g.at(i, j) = v;
      if (j != i) g.at(j, i) = std::conj(v);
    }
  }
  return g;
}

std::vector<double> outcome_probabilities(const std::vector<MomentumAmplitude>& states,
                                          int input_index, Measure measure, double tol,
                                          double ortho_tol) {
  const int n = static_cast<int>(states.size());
  if (input_index < 0 || input_index >= n) {
    throw PreconditionError("outcome_probabilities: input index out of range");
  }
  const GramMatrix g = gram_matrix(states, measure, tol);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(g.at(i, j) - target) > ortho_tol) {
        throw PreconditionError(
            "outcome_probabilities: states '" + states[i].label + "' and '" +
            states[j].label + "' are not orthonormal: <i|j> = " +
            std::to_string(g.at(i, j).real()) + (g.at(i, j).imag() >= 0 ? "+" : "") +
            std::to_string(g.at(i, j).imag()) + "i");
      }
    }
  }
  std::vector<double> probs(n + 1, 0.0);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    probs[j] = std::norm(g.at(j, input_index));
    total += probs[j];
  }
  probs[n] = std::max(0.0, 1.0 - total);  // complement channel
  return probs;
}

}  // namespace lcq
