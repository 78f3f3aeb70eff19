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

#include <cstdint>

#include "qpolar/linalg.hpp"

namespace qpolar {

/// Counter-based generator: the n-th draw is splitmix64(seed + n * golden).
/// Platform independent, so seeded experiments reproduce bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();
  cplx complex_normal();  // E|z|^2 = 1
  std::size_t index(std::size_t n);     // uniform in [0, n)

  /// Independent child stream; derived deterministically from this one.
  Rng split();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of diag(R) removed.
CMatrix haar_unitary(std::size_t n, Rng& rng);

/// Uniformly random pure state of dimension n.
CVector random_state(std::size_t n, Rng& rng);

/// Matrix with prescribed singular values sigma (padded with zeros to n) and
/// Haar-random singular vectors.
CMatrix random_with_singular_values(std::size_t n, const RVector& sigma, Rng& rng);

/// Read QPOLAR_SEED if set, otherwise return fallback.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace qpolar
