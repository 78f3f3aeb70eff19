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

#include "qpolar/procrustes.hpp"

#include <cmath>
#include <filesystem>

namespace qpolar {

void PairSet::validate() const {
  if (F.rows() != G.rows() || F.cols() != G.cols()) throw Error("pairs: input and output matrices differ in shape");
  if (F.cols() == 0) throw Error("pairs: no columns");
  for (std::size_t k = 0; k < F.cols(); ++k) {
    if (!is_normalized(F.col(k))) throw Error("pairs: input " + std::to_string(k) + " is not normalized");
    if (!is_normalized(G.col(k))) throw Error("pairs: output " + std::to_string(k) + " is not normalized");
  }
}

PairSet load_pairs(const std::string& dir) {
  const std::filesystem::path d(dir);
  PairSet ps{read_matrix_file((d / "inputs.txt").string()), read_matrix_file((d / "outputs.txt").string())};
  ps.validate();
  return ps;
}

CMatrix procrustes_matrix(const PairSet& ps) {
  ps.validate();
  return ps.G * ps.F.adjoint();
}

CMatrix procrustes_oracle(const PairSet& ps) { return polar_oracle(procrustes_matrix(ps)).U; }

OptimalityReport check_optimality(const PairSet& ps, int samples, Rng& rng) {
  OptimalityReport rep;
  rep.oracle_residual = frobenius_norm(procrustes_oracle(ps) * ps.F - ps.G);
  rep.best_sampled_residual = std::numeric_limits<double>::infinity();
  rep.beats_all = true;
  for (int s = 0; s < samples; ++s) {
    const double res = frobenius_norm(haar_unitary(ps.dim(), rng) * ps.F - ps.G);
    rep.best_sampled_residual = std::min(rep.best_sampled_residual, res);
    if (rep.oracle_residual > res + 1e-9) rep.beats_all = false;
  }
  return rep;
}

namespace {

CMatrix pad_rows(const CMatrix& m) { return pad(m, next_pow2(m.rows()), m.cols()); }

}  // namespace

BlockEncoding procrustes_encoding(const PairSet& ps) {
  ps.validate();
  const StatePrepOracle u_psi = make_state_prep(pad_rows(ps.F), "u_psi");
  const StatePrepOracle u_phi = make_state_prep(pad_rows(ps.G), "u_phi");
  return lcu_encoding(u_psi, u_phi);
}

ProcrustesRun procrustes_circuit(const PairSet& ps, const CVector& psi, double eps, std::optional<double> c_lower) {
  ps.validate();
  if (psi.size() != ps.dim()) throw Error("procrustes_circuit: state dimension mismatch");
  if (c_lower && !(*c_lower > 0.0 && *c_lower <= 1.0)) throw Error("procrustes_circuit: c_lower must lie in (0, 1]");
  const CMatrix a = procrustes_matrix(ps);
  const SvdResult s = svd(a);
  if (s.rank == 0) throw Error("procrustes_circuit: G F^dagger is zero");

  ProcrustesRun run;
  run.kappa = s.sigma[0] / s.sigma[s.rank - 1];
  run.c_true = norm2(column_projector(s.V) * psi);
  run.c_violated = c_lower.has_value() && run.c_true < *c_lower;

  const BlockEncoding be = procrustes_encoding(ps);
  CVector padded(be.system_dim(), 0.0);
  std::copy(psi.begin(), psi.end(), padded.begin());
  PolarRunConfig cfg;
  cfg.eps = eps;
  cfg.delta = std::min(1.0, s.sigma[s.rank - 1] / be.alpha);
  cfg.amplify = true;
  run.polar = polar_transform(be, padded, cfg);
  return run;
}

namespace {

CMatrix haar_columns(std::size_t n, std::size_t r, Rng& rng) {
  if (r > n) throw Error("pairs: more orthonormal columns than the dimension");
  return haar_unitary(n, rng).block(0, 0, n, r);
}

}  // namespace

PairSet orthonormal_pairs(std::size_t n, std::size_t r, Rng& rng) {
  PairSet ps;
  ps.F = haar_columns(n, r, rng);
  ps.G = haar_columns(n, r, rng);
  return ps;
}

PairSet pairs_with_kappa(std::size_t n, double kappa, Rng& rng) {
  if (!(kappa >= 1.0)) throw Error("pairs_with_kappa: kappa must be at least 1");
  // Outputs with Gram matrix [[1, x], [x, 1]] have singular values sqrt(1 +- x).
  const double x = (kappa * kappa - 1.0) / (kappa * kappa + 1.0);
  const CMatrix q = haar_columns(n, 2, rng);
  PairSet ps;
  ps.F = haar_columns(n, 2, rng);
  ps.G = CMatrix(n, 2);
  const double a = std::sqrt((1.0 + x) / 2.0), b = std::sqrt((1.0 - x) / 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    ps.G(i, 0) = a * q(i, 0) + b * q(i, 1);
    ps.G(i, 1) = a * q(i, 0) - b * q(i, 1);
  }
  return ps;
}

PairSet random_pairs(std::size_t n, std::size_t r, Rng& rng) {
  PairSet ps{CMatrix(n, r), CMatrix(n, r)};
  for (std::size_t k = 0; k < r; ++k) {
    const CVector f = random_state(n, rng), g = random_state(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      ps.F(i, k) = f[i];
      ps.G(i, k) = g[i];
    }
  }
  return ps;
}

ProcrustesScaling procrustes_query_scaling(double eps, std::uint64_t seed) {
  constexpr std::size_t kDim = 8;
  Rng rng(seed);
  ProcrustesScaling rep;
  auto run = [&](const PairSet& ps, double e) {
    const SvdResult s = svd(ps.F.adjoint());
    const CVector psi = normalized(s.V * [&] {
      CVector c(s.rank);
      for (auto& z : c) z = rng.complex_normal();
      return c;
    }());
    const ProcrustesRun r = procrustes_circuit(ps, psi, e);
    rep.max_residual = std::max(rep.max_residual, r.polar.residual);
    return static_cast<double>(r.polar.encoder_uses);
  };
  for (std::size_t r : {1, 2, 4, 8}) {
    rep.r_values.push_back(static_cast<double>(r));
    rep.r_uses.push_back(run(orthonormal_pairs(kDim, r, rng), eps));
  }
  for (double k : {2.0, 4.0, 8.0, 16.0}) {
    rep.kappa_values.push_back(k);
    rep.kappa_uses.push_back(run(pairs_with_kappa(kDim, k, rng), eps));
  }
  const PairSet fixed = pairs_with_kappa(kDim, 2.0, rng);
  for (double e : {1e-2, 1e-4}) {
    rep.eps_values.push_back(e);
    rep.eps_uses.push_back(run(fixed, e));
  }
  rep.r_exponent = fit_loglog_slope(rep.r_values, rep.r_uses);
  rep.kappa_exponent = fit_loglog_slope(rep.kappa_values, rep.kappa_uses);
  return rep;
}

}  // namespace qpolar
