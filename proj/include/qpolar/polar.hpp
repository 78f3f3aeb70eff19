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
#include <vector>

#include "qpolar/blockenc.hpp"
#include "qpolar/qsvt.hpp"
#include "qpolar/rng.hpp"

namespace qpolar {

struct PolarRunConfig {
  double eps = 1e-3;
  double delta = 0.1;  // at most sigma_min(A) / alpha
  bool amplify = false;
  // Overlap ||Pi_row |0^a>|psi>||. Estimated from a simulation pass when absent.
  std::optional<double> c;
};

struct PolarRunReport {
  CVector output;    // on the b + a + n register
  CVector target;    // ideal state the residual is measured against
  double residual = 0.0;
  QueryLedger ledger;
  std::uint64_t encoder_uses = 0;  // applications of U or U^dagger
  int degree = 0;
  int oaa_reps = 1;
  double gamma = 1.0;     // amplitude scaling of the sign polynomial
  double c_used = 1.0;
  bool c_estimated = false;
  double svt_eps = 0.0;   // accuracy requested from the sign polynomial
};

/// Smallest odd n with sin(pi / 2n) <= c + slack(n).
int oaa_repetitions(double c, double eps);

/// Polar transform of a block-encoded A applied to |0^a>|psi>, optionally
/// followed by amplitude amplification onto the ancilla-zero subspace.
PolarRunReport polar_transform(const BlockEncoding& be, const CVector& psi, const PolarRunConfig& cfg);

/// psi = c |row> + sqrt(1 - c^2) |null> for a rank-deficient a; c = 1 needs no null space.
CVector state_with_row_overlap(const CMatrix& a, double c, Rng& rng);

struct PolarTrial {
  double kappa = 0.0;
  double c = 0.0;
  double residual = 0.0;
  std::uint64_t encoder_uses = 0;
  int degree = 0;
  int oaa_reps = 0;
};

struct PolarScalingReport {
  std::vector<PolarTrial> trials;
  double max_residual = 0.0;
  double kappa_exponent = 0.0;  // log-log slope of mean encoder uses against kappa
  bool all_within_eps = false;
};

/// Random direct-encoded instances on n_qubits, trials_per_kappa per entry of kappas.
PolarScalingReport verify_polar_scaling(int trials_per_kappa, unsigned n_qubits, const RVector& kappas,
                                        double c, double eps, std::uint64_t seed);

}  // namespace qpolar
