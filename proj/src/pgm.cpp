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

#include "qpolar/pgm.hpp"

#include <cmath>
#include <filesystem>

namespace qpolar {

void Ensemble::validate() const {
  if (p.empty()) throw Error("ensemble: no states");
  if (states.cols() != p.size()) {
    throw Error("ensemble: " + std::to_string(states.cols()) + " states but " + std::to_string(p.size()) +
                " probabilities");
  }
  double total = 0.0;
  for (double x : p) {
    if (!(x > 0.0)) throw Error("ensemble: probabilities must be positive");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10) throw Error("ensemble: probabilities sum to " + format_real(total));
  for (std::size_t k = 0; k < states.cols(); ++k) {
    if (!is_normalized(states.col(k))) throw Error("ensemble: state " + std::to_string(k) + " is not normalized");
  }
}

Ensemble load_ensemble(const std::string& dir) {
  const std::filesystem::path d(dir);
  Ensemble e;
  e.states = read_matrix_file((d / "states.txt").string());
  e.p = read_real_file((d / "probs.txt").string());
  e.validate();
  return e;
}

CMatrix ensemble_density(const Ensemble& e) {
  CMatrix rho(e.dim(), e.dim());
  for (std::size_t k = 0; k < e.r(); ++k) {
    const CVector v = e.states.col(k);
    rho += outer(v, v) * cplx{e.p[k]};
  }
  return rho;
}

CMatrix pgm_vectors(const Ensemble& e) {
  e.validate();
  const CMatrix s = pinv_sqrt(ensemble_density(e));
  CMatrix nu = s * e.states;
  for (std::size_t k = 0; k < e.r(); ++k)
    for (std::size_t i = 0; i < e.dim(); ++i) nu(i, k) *= std::sqrt(e.p[k]);
  return nu;
}

CMatrix pgm_matrix(const Ensemble& e) {
  e.validate();
  if (e.r() > e.dim()) throw Error("pgm_matrix: more states than the system dimension");
  CMatrix a(e.dim(), e.dim());
  for (std::size_t k = 0; k < e.r(); ++k)
    for (std::size_t j = 0; j < e.dim(); ++j) a(k, j) = std::sqrt(e.p[k]) * std::conj(e.states(j, k));
  return a;
}

PgmDistribution qpgm_oracle(const Ensemble& e, const CVector& omega) {
  if (omega.size() != e.dim()) throw Error("qpgm_oracle: state dimension mismatch");
  if (!is_normalized(omega)) throw Error("qpgm_oracle: state is not normalized");
  const CMatrix nu = pgm_vectors(e);
  PgmDistribution d;
  d.probs.assign(e.r() + 1, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < e.r(); ++k) {
    d.probs[k] = std::norm(inner(nu.col(k), omega));
    total += d.probs[k];
  }
  d.probs[e.r()] = std::max(0.0, 1.0 - total);
  return d;
}

BlockEncoding pgm_encoding(const Ensemble& e) {
  e.validate();
  const std::size_t r = e.r();
  if (!is_pow2(r)) throw Error("pgm: r = " + std::to_string(r) + " is not a power of two; pad the ensemble");
  if (r > e.dim()) throw Error("pgm: more states than the system dimension");
  const StatePrepOracle u_phi = make_state_prep(e.states, "u_phi");
  const unsigned g = u_phi.g, n = u_phi.n;
  const StatePrepOracle u_copy = copy_oracle(g, n);
  BlockEncoding be = weighted_projector_encoding(u_copy, u_phi, amplitude_oracle(e.p), hadamard_n(g));
  be.alpha = std::sqrt(static_cast<double>(r));
  return be;
}

RVector sample_frequencies(const RVector& probs, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw Error("sample_frequencies: shots must be positive");
  RVector counts(probs.size(), 0.0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    double u = rng.uniform();
    std::size_t k = 0;
    while (k + 1 < probs.size() && u >= probs[k]) u -= probs[k++];
    counts[k] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(shots);
  return counts;
}

PgmRun pgm_circuit(const Ensemble& e, const CVector& omega, double eps, std::uint64_t shots, Rng* rng) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("pgm_circuit: eps must lie in (0, 1)");
  if (omega.size() != e.dim()) throw Error("pgm_circuit: state dimension mismatch");
  if (shots > 0 && !rng) throw Error("pgm_circuit: sampling requires a random generator");
  const BlockEncoding be = pgm_encoding(e);
  const CMatrix a = pgm_matrix(e);

  PgmRun run;
  run.kappa_a = kappa(a);
  const SvdResult s = svd(a);
  run.delta = std::min(1.0, s.sigma[s.rank - 1] / be.alpha);
  PolarRunConfig cfg;
  cfg.eps = eps;  // squared again inside the unamplified polar transform
  cfg.delta = run.delta;
  cfg.amplify = false;
  run.polar = polar_transform(be, omega, cfg);

  PgmDistribution d;
  d.source = DistSource::Circuit;
  d.probs.assign(e.r() + 1, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < e.r(); ++k) {
    d.probs[k] = std::norm(run.polar.output[k]);
    total += d.probs[k];
  }
  d.probs[e.r()] = std::max(0.0, 1.0 - total);
  if (shots > 0) {
    d.probs = sample_frequencies(d.probs, shots, *rng);
    run.shots = shots;
  }
  run.dist = std::move(d);
  return run;
}

PetzResult petz_ideal(const Ensemble& e, const CVector& omega) {
  if (omega.size() != e.dim()) throw Error("petz_ideal: state dimension mismatch");
  const CMatrix nu = pgm_vectors(e);
  PetzResult res;
  res.state = CMatrix(e.r() * e.dim(), e.r() * e.dim());
  res.x_marginal.source = DistSource::Petz;
  res.x_marginal.probs.assign(e.r() + 1, 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < e.r(); ++j) {
    const double w = std::norm(inner(nu.col(j), omega));
    const CVector v = e.states.col(j);
    res.state.set_block(j * e.dim(), j * e.dim(), outer(v, v) * cplx{w});
    res.x_marginal.probs[j] = w;
    total += w;
  }
  res.x_marginal.probs[e.r()] = std::max(0.0, 1.0 - total);
  return res;
}

CostModel cost_models(double kappa_a, double r, double t_p, double t_phi) {
  if (!(kappa_a > 0 && r > 0 && t_p > 0 && t_phi > 0)) throw Error("cost_models: inputs must be positive");
  const double k3 = kappa_a * kappa_a * kappa_a;
  const double sr = std::sqrt(r);
  CostModel c;
  c.petz = k3 * sr * t_p + (k3 * sr + r * sr * kappa_a) * t_phi;
  c.polar = sr * kappa_a * (t_p + t_phi);
  return c;
}

}  // namespace qpolar
