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

#include "qpolar/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace qpolar {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(seed_ + (++counter_) * kGolden); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Box-Muller; u1 is kept away from zero.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx{re, im} / std::numbers::sqrt2;
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw Error("Rng::index: empty range");
  return static_cast<std::size_t>(next_u64() % n);
}

Rng Rng::split() { return Rng(splitmix64(next_u64() ^ 0xD1B54A32D192ED03ULL)); }

CMatrix haar_unitary(std::size_t n, Rng& rng) {
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return qr(g).Q;
}

CVector random_state(std::size_t n, Rng& rng) {
  CVector v(n);
  for (auto& z : v) z = rng.complex_normal();
  return normalized(v);
}

CMatrix random_with_singular_values(std::size_t n, const RVector& sigma, Rng& rng) {
  if (sigma.size() > n) throw Error("random_with_singular_values: too many singular values");
  RVector d(n, 0.0);
  std::copy(sigma.begin(), sigma.end(), d.begin());
  const CMatrix w = haar_unitary(n, rng);
  const CMatrix v = haar_unitary(n, rng);
  return w * CMatrix::diag(d) * v.adjoint();
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("QPOLAR_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (*end != '\0') throw Error(std::string("QPOLAR_SEED is not an integer: '") + env + "'");
  return v;
}

}  // namespace qpolar
