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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpolar/ledger.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar {

/// H = (1/r) [[0, A^dagger], [A, 0]] on 2N dimensions.
struct Embedding {
  CMatrix H;
  CMatrix A;
  std::size_t r = 0;
};

Embedding embed(const CMatrix& a, std::size_t r);

/// rho = (1/2r) sum_j v_j v_j^dagger with v_j = [psi_j; phi_j]; rho_tilde uses -phi_j.
/// Their difference is embed(G F^dagger, r).H.
struct DmeStates {
  CMatrix rho;
  CMatrix rho_tilde;
};

DmeStates dme_states(const PairSet& ps);

/// sqrt(2/T) sin(pi (tau + 1/2) / T)
RVector helper_state(std::size_t T);

struct FilterParams {
  double kappa = 1.0;
  std::size_t r = 1;
};

/// Piecewise sign surrogate: 0 for |x| < 1/(2 kappa r), +-1 beyond 1/(kappa r),
/// a quarter sine period in between.
double filter_f(double x, const FilterParams& fp);

/// (sqrt(1 - f^2), f) in the (ill, well) basis.
std::array<double, 2> flag_state(double x, const FilterParams& fp);

/// Eigenvalue estimate for register value k.
double decode(std::size_t k, double t0);

/// Block-diagonal rotation on Q (x) flag (flag least significant, ill = 0, well = 1).
CMatrix flag_rotation(double t0, std::size_t T, const FilterParams& fp);

/// Smallest power of two >= 4 t0 (at least 2).
std::size_t choose_T(double t0);
/// Throws when T is not a power of two or too small to resolve [-1, 1] without aliasing.
void validate_T(double t0, std::size_t T);

/// State after controlled evolution and inverse QFT, laid out as k * 2N + i.
CVector qpe_exact(const Embedding& emb, double t0, std::size_t T, const CVector& input);

/// e^{-i(rho - rho_tilde) t} sigma e^{+i(rho - rho_tilde) t} approximated with
/// n_steps steps, each consuming one copy of rho and one of rho_tilde.
CMatrix lmr_channel(const CMatrix& rho, const CMatrix& rho_tilde, double t, std::uint64_t n_steps,
                    const CMatrix& sigma, QueryLedger* ledger = nullptr);

/// Same channel evaluated by forming the joint state with each copy and tracing it out.
CMatrix lmr_channel_reference(const CMatrix& rho, const CMatrix& rho_tilde, double t, std::uint64_t n_steps,
                              const CMatrix& sigma, QueryLedger* ledger = nullptr);

enum class DmeMode { Exact, Lmr };

struct DmeConfig {
  double t0 = 100.0;
  std::size_t T = 0;  // 0 selects choose_T(t0)
  double eps_d = 1e-2;
  DmeMode mode = DmeMode::Exact;
  std::optional<double> filter_kappa;  // defaults to 1 / sigma_min(G F^dagger)
};

struct DmeRun {
  CVector output;      // exact mode, layout tau * 2N + i
  CMatrix output_rho;  // lmr mode
  CVector target;      // |Psi_0> (x) [0; psi_ideal]
  double residual = 0.0;      // l2 distance (exact) or trace distance (lmr) to target
  double qpe_residual = 0.0;  // same metric, against the ideally filtered state
  double exact_gap = 0.0;     // lmr mode: trace distance to the exact-mode output
  double success_prob = 0.0;
  double t0 = 0.0;
  std::size_t T = 0;
  double eps_d = 0.0;
  double kappa = 0.0;
  double filter_kappa = 0.0;
  QueryLedger ledger;
  std::vector<std::string> warnings;
};

DmeRun run_algorithm3(const PairSet& ps, const CVector& psi, const DmeConfig& cfg);

/// t0 = C r kappa / (sqrt(c) eps) and eps_D = sqrt(c) eps / 2 for a target accuracy eps.
inline constexpr double kT0Constant = 4.0;
DmeConfig dme_config_for(const PairSet& ps, const CVector& psi, double eps);

struct LipschitzReport {
  double max_ratio_f = 0.0;
  double max_ratio_h = 0.0;
  double bound = 0.0;  // pi kappa r
  bool holds = false;
};

LipschitzReport lipschitz_check(const FilterParams& fp, std::size_t samples, std::uint64_t seed);

}  // namespace qpolar
