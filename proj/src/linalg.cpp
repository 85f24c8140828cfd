// SPDX-License-Identifier: Apache-2.0
#include "lcq/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace lcq {

std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, int n) {
  // Embed H = A + iB into the 2n x 2n real symmetric [[A, -B], [B, A]];
  // each eigenvalue of H appears twice.
  const int m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * m + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::complex<double> v = h[static_cast<std::size_t>(i) * n + j];
      at(i, j) = v.real();
      at(i + n, j + n) = v.real();
      at(i, j + n) = -v.imag();
      at(i + n, j) = v.imag();
    }
  }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-28 * (1.0 + std::abs(at(0, 0)))) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> all(m);
  for (int i = 0; i < m; ++i) all[i] = at(i, i);
  std::sort(all.begin(), all.end());
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
  return eig;
}

}  // namespace lcq
