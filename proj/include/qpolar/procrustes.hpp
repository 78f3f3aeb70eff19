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
#include <optional>
#include <string>

#include "qpolar/blockenc.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/rng.hpp"

namespace qpolar {

/// Paired columns: inputs F (N x r) map to outputs G (N x r).
struct PairSet {
  CMatrix F;
  CMatrix G;

  std::size_t r() const { return F.cols(); }
  std::size_t dim() const { return F.rows(); }
  void validate() const;
};

/// inputs.txt (F) and outputs.txt (G) in the matrix text format.
PairSet load_pairs(const std::string& dir);

/// G F^dagger
CMatrix procrustes_matrix(const PairSet& ps);

/// Polar isometry of G F^dagger.
CMatrix procrustes_oracle(const PairSet& ps);

struct OptimalityReport {
  double oracle_residual = 0.0;       // ||U* F - G||_F
  double best_sampled_residual = 0.0;
  bool beats_all = false;
};

/// Compares U* against `samples` Haar-random unitaries.
OptimalityReport check_optimality(const PairSet& ps, int samples, Rng& rng);

/// Controlled-preparation encoding of G F^dagger with alpha = r (inputs are zero padded
/// to a power-of-two dimension).
BlockEncoding procrustes_encoding(const PairSet& ps);

struct ProcrustesRun {
  PolarRunReport polar;
  double kappa = 0.0;
  double c_true = 0.0;  // ||Pi_row psi||
  bool c_violated = false;
};

/// Amplified polar transform of the encoding applied to psi. The overlap c is
/// estimated inside the pipeline; c_lower is only checked.
ProcrustesRun procrustes_circuit(const PairSet& ps, const CVector& psi, double eps,
                                 std::optional<double> c_lower = std::nullopt);

/// Orthonormal inputs and outputs (kappa = 1).
PairSet orthonormal_pairs(std::size_t n, std::size_t r, Rng& rng);
/// r = 2 pairs with orthonormal outputs whose inputs overlap so that
/// sigma_max / sigma_min of G F^dagger equals kappa.
PairSet pairs_with_kappa(std::size_t n, double kappa, Rng& rng);
/// Independent Haar-random normalized columns.
PairSet random_pairs(std::size_t n, std::size_t r, Rng& rng);

struct ProcrustesScaling {
  RVector r_values, r_uses;
  RVector kappa_values, kappa_uses;
  RVector eps_values, eps_uses;
  double r_exponent = 0.0;
  double kappa_exponent = 0.0;
  double max_residual = 0.0;
};

/// Encoder-use counts over r in {1,2,4,8} (kappa = 1), kappa in {2,4,8,16}
/// (r = 2) and eps in {1e-2, 1e-4} (r = 2, kappa = 2), on 8-dimensional systems.
ProcrustesScaling procrustes_query_scaling(double eps, std::uint64_t seed);

}  // namespace qpolar
