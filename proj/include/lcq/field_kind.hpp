// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace lcq {

enum class FieldType { Scalar, Dirac, Photon };

/// Field species plus mass. Constructors enforce the kind invariants
/// (photon massless, Dirac massive, scalar mass >= 0).
struct FieldKind {
  FieldType type = FieldType::Scalar;
  double mass = 0.0;

  static FieldKind scalar(double m);
  static FieldKind dirac(double m);
  static FieldKind photon();

  /// 1 for scalar, 4 spinor components for Dirac, 2 helicities for photon.
  int components() const;
  std::string name() const;
  bool operator==(const FieldKind& o) const = default;
};

enum class Measure { lorentz, galilean };

enum class DecayHint { gaussian, exponential, power_law };

}  // namespace lcq
