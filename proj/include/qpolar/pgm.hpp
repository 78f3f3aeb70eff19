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
#include <string>

#include "qpolar/blockenc.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/rng.hpp"

namespace qpolar {

/// Pure-state ensemble {p_k, |phi_k>}: states are the columns of an N x r matrix.
struct Ensemble {
  RVector p;
  CMatrix states;

  std::size_t r() const { return p.size(); }
  std::size_t dim() const { return states.rows(); }
  void validate() const;
};

/// states.txt (N x r matrix file) and probs.txt (one probability per line).
Ensemble load_ensemble(const std::string& dir);

enum class DistSource { Oracle, Circuit, Petz };

/// probs has r + 1 entries; the last one is the inconclusive outcome.
struct PgmDistribution {
  RVector probs;
  DistSource source = DistSource::Oracle;
};

/// rho = sum_k p_k |phi_k><phi_k|
CMatrix ensemble_density(const Ensemble& e);

/// Columns nu_k = rho^{-1/2} sqrt(p_k) |phi_k>.
CMatrix pgm_vectors(const Ensemble& e);

/// sum_k sqrt(p_k) |k><phi_k|, padded to N x N.
CMatrix pgm_matrix(const Ensemble& e);

PgmDistribution qpgm_oracle(const Ensemble& e, const CVector& omega);

struct PgmRun {
  PgmDistribution dist;
  PolarRunReport polar;
  double kappa_a = 0.0;
  double delta = 0.0;
  std::uint64_t shots = 0;  // 0 means exact probabilities
};

/// Pretty-good measurement through the polar pipeline on a weighted-projector style
/// encoding of pgm_matrix(e)/sqrt(r). With shots > 0 the distribution is a
/// multinomial estimate drawn from rng.
PgmRun pgm_circuit(const Ensemble& e, const CVector& omega, double eps, std::uint64_t shots = 0,
                   Rng* rng = nullptr);

/// The block-encoding used by pgm_circuit.
BlockEncoding pgm_encoding(const Ensemble& e);

struct PetzResult {
  CMatrix state;  // on X (dimension r) tensor B (dimension N)
  PgmDistribution x_marginal;
};

PetzResult petz_ideal(const Ensemble& e, const CVector& omega);

struct CostModel {
  double petz = 0.0;
  double polar = 0.0;
  double ratio() const { return petz / polar; }
};

CostModel cost_models(double kappa_a, double r, double t_p, double t_phi);

/// Draw `shots` outcomes from probs and return the empirical frequencies.
RVector sample_frequencies(const RVector& probs, std::uint64_t shots, Rng& rng);

}  // namespace qpolar
