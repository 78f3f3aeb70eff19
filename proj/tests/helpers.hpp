// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

#include "qpolar/linalg.hpp"
#include "qpolar/rng.hpp"

namespace qpolar::testing {

inline CMatrix random_matrix(std::size_t m, std::size_t n, Rng& rng) {
  CMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  return a;
}

/// Polar isometry by the Newton-Schulz iteration X <- X (3I - X^dagger X) / 2.
/// Needs no decomposition, so it is independent of the library's SVD path.
/// Zero singular values are unstable fixed points (round-off grows by 3/2 per
/// step), so the loop stops as soon as the iterate settles.
inline CMatrix newton_schulz_polar(const CMatrix& a) {
  CMatrix x = a * cplx{1.0 / frobenius_norm(a)};
  const CMatrix three = CMatrix::identity(a.cols()) * cplx{3.0};
  for (int i = 0; i < 200; ++i) {
    const CMatrix next = x * (three - x.adjoint() * x) * cplx{0.5};
    const double change = frobenius_norm(next - x);
    x = next;
    if (change <= 1e-14) break;
  }
  return x;
}

/// 2x2 PSD square root: (M + sqrt(det) I) / sqrt(tr + 2 sqrt(det)).
inline CMatrix sqrt_2x2(const CMatrix& m) {
  const double det = std::sqrt(std::max(0.0, (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real()));
  const double t = std::sqrt(m(0, 0).real() + m(1, 1).real() + 2.0 * det);
  return (m + CMatrix::identity(2) * cplx{det}) * cplx{1.0 / t};
}

inline CMatrix inverse_2x2(const CMatrix& m) {
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return CMatrix{{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}} * (1.0 / det);
}

}  // namespace qpolar::testing
