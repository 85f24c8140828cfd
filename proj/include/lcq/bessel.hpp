// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace lcq::bessel {

/// Branch selector. `automatic` picks by crossover; the explicit branches
/// exist so tests can cross-check the two evaluation paths against each
/// other inside their overlap window.
enum class Path { automatic, series, large };

/// Crossover points keeping every branch at or below ~1e-11 relative error
/// (envelope-relative for the oscillatory pair).
inline constexpr double jy_crossover = 12.0;
inline constexpr double k_crossover = 2.0;

/// Bessel J1(x), x >= 0. Power series below the crossover, Hankel
/// asymptotic expansion above.
double j1(double x, Path path = Path::automatic);

/// Neumann Y1(x), x > 0.
double y1(double x, Path path = Path::automatic);

/// Modified Bessel K1(x), x > 0. Power series below k_crossover, Chebyshev
/// uniform expansion in 4/x above. Underflows smoothly for large x.
double k1(double x, Path path = Path::automatic);

/// e^x K1(x); safe for x up to ~1e15 / 16.
double k1_scaled(double x, Path path = Path::automatic);

/// Modified Bessel I1(x) by power series (overflows past x ~ 700).
double i1(double x);

}  // namespace lcq::bessel
