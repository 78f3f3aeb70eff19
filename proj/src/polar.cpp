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

#include "qpolar/polar.hpp"

#include <cmath>
#include <numbers>

namespace qpolar {

namespace {

struct CircuitRun {
  CVector out;
  std::uint64_t uses = 0;
  int degree = 0;
};

CVector embed_input(const BlockEncoding& be, const CVector& psi) {
  CVector x(2 * be.dim(), 0.0);
  std::copy(psi.begin(), psi.end(), x.begin());
  return x;
}

// Norm of the b = 0, ancilla = 0 part of a circuit output.
double good_norm(const CVector& out, std::size_t sys) {
  double s = 0.0;
  for (std::size_t i = 0; i < sys; ++i) s += std::norm(out[i]);
  return std::sqrt(s);
}

double smallest_singular(const CMatrix& block) {
  const SvdResult s = svd(block);
  if (s.rank == 0) throw Error("polar_transform: block-encoded matrix is zero");
  return s.sigma[s.rank - 1];
}

}  // namespace

int oaa_repetitions(double c, double eps) {
  if (!(c > 0.0 && c <= 1.0)) throw Error("oaa_repetitions: c must lie in (0, 1]");
  int n = 1;
  while (std::sin(std::numbers::pi / (2.0 * n)) > c + eps * eps / (4.0 * n)) n += 2;
  return n;
}

PolarRunReport polar_transform(const BlockEncoding& be, const CVector& psi, const PolarRunConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw Error("polar_transform: eps must lie in (0, 1)");
  if (!(cfg.delta > 0.0 && cfg.delta <= 1.0)) throw Error("polar_transform: delta must lie in (0, 1]");
  if (cfg.c && !(*cfg.c > 0.0 && *cfg.c <= 1.0)) throw Error("polar_transform: c must lie in (0, 1]");
  if (psi.size() != be.system_dim()) throw Error("polar_transform: state dimension does not match the encoding");
  if (!is_normalized(psi)) throw Error("polar_transform: input state is not normalized");

  const std::size_t sys = be.system_dim();
  const CMatrix block = be.U.block(0, 0, sys, sys);
  const double smin = smallest_singular(block);
  if (cfg.delta > smin * (1.0 + 1e-9)) {
    throw Error("polar_transform: delta = " + format_real(cfg.delta) + " exceeds sigma_min(A)/alpha = " +
                format_real(smin));
  }
  const CVector ideal = polar_oracle(block).U * psi;
  const CVector x = embed_input(be, psi);

  PolarRunReport rep;
  auto run_plain = [&](double svt_eps) {
    const OddPoly p = sign_poly(cfg.delta, svt_eps);
    PhaseCircuit pc(be, find_phases(p), standard_projectors(be));
    CircuitRun r;
    r.out = pc.apply(x, &rep.ledger);
    r.uses = pc.degree();
    r.degree = p.degree;
    return r;
  };

  if (!cfg.amplify) {
    rep.svt_eps = cfg.eps * cfg.eps;
    CircuitRun r = run_plain(rep.svt_eps);
    rep.output = std::move(r.out);
    rep.encoder_uses = r.uses;
    rep.degree = r.degree;
    rep.target = CVector(rep.output.size(), 0.0);
    std::copy(ideal.begin(), ideal.end(), rep.target.begin());
    CVector projected(rep.output.size(), 0.0);
    std::copy_n(rep.output.begin(), sys, projected.begin());
    rep.residual = l2_distance(projected, rep.target);
    rep.c_used = norm2(ideal);
    return rep;
  }

  const double ideal_norm = norm2(ideal);
  double c = 0.0;
  if (cfg.c) {
    c = *cfg.c;
  } else {
    // Two passes: a coarse one fixes n, a finer one sharpens c to the slack n needs.
    CircuitRun coarse = run_plain(cfg.eps * cfg.eps);
    const double c0 = good_norm(coarse.out, sys);
    if (c0 <= cfg.eps * cfg.eps) throw Error("polar_transform: input has no overlap with the row space of A");
    const int n0 = oaa_repetitions(std::min(c0, 1.0), cfg.eps);
    CircuitRun fine = run_plain(cfg.eps * cfg.eps / (8.0 * n0));
    c = std::min(good_norm(fine.out, sys), 1.0);
    rep.encoder_uses += coarse.uses + fine.uses;
    rep.c_estimated = true;
  }
  if (ideal_norm <= 1e-12) throw Error("polar_transform: input has no overlap with the row space of A");

  const int n = oaa_repetitions(c, cfg.eps);
  const double target_amp = std::sin(std::numbers::pi / (2.0 * n));
  rep.oaa_reps = n;
  rep.gamma = std::min(1.0, target_amp / c);
  rep.c_used = c;
  rep.svt_eps = cfg.eps * cfg.eps / (4.0 * n);

  const OddPoly p = scaled(sign_poly(cfg.delta, rep.svt_eps), rep.gamma);
  const PhaseSequence phases = find_phases(p);
  rep.degree = p.degree;
  const Projector pi_in = Projector::from_state(x);
  const Projector pi_out = Projector::ancilla_zero(be.a + 1, be.n);
  const PhaseCircuit pc(be, phases, standard_projectors(be));

  std::uint64_t calls = 0;
  const LinearMap u = [&](const CVector& v) {
    ++calls;
    return pc.apply(v, &rep.ledger);
  };
  const LinearMap u_adj = [&](const CVector& v) {
    ++calls;
    return pc.apply_adjoint(v, &rep.ledger);
  };
  rep.output = oaa_apply(u, u_adj, pi_in, pi_out, n, x);
  rep.encoder_uses += calls * pc.degree();
  rep.target = CVector(rep.output.size(), 0.0);
  for (std::size_t i = 0; i < sys; ++i) rep.target[i] = ideal[i] / ideal_norm;
  rep.residual = l2_distance(rep.output, rep.target);
  return rep;
}

CVector state_with_row_overlap(const CMatrix& a, double c, Rng& rng) {
  if (!(c >= 0.0 && c <= 1.0)) throw Error("state_with_row_overlap: c must lie in [0, 1]");
  const std::size_t n = a.cols();
  const SvdResult s = svd(a);
  const CMatrix proj = column_projector(s.V);
  CVector g(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = rng.complex_normal();
    h[i] = rng.complex_normal();
  }
  const CVector row = normalized(proj * g);
  if (c >= 1.0) return row;
  if (s.rank == n) throw Error("state_with_row_overlap: matrix has full rank, so c must be 1");
  const CVector null = normalized(h - proj * h);
  return normalized(cplx{c} * row + cplx{std::sqrt(1.0 - c * c)} * null);
}

PolarScalingReport verify_polar_scaling(int trials_per_kappa, unsigned n_qubits, const RVector& kappas,
                                        double c, double eps, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t rank = c < 1.0 ? dim - 1 : dim;
  if (rank == 0) throw Error("verify_polar_scaling: need at least one system qubit for c < 1");
  PolarScalingReport rep;
  rep.all_within_eps = true;
  RVector mean_uses;
  for (double k : kappas) {
    if (!(k >= 1.0)) throw Error("verify_polar_scaling: kappa must be at least 1");
    double total = 0.0;
    for (int t = 0; t < trials_per_kappa; ++t) {
      RVector sigma(rank);
      for (std::size_t i = 0; i < rank; ++i) {
        const double u = rank == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(rank - 1);
        sigma[i] = std::pow(k, -u);  // spans [1/kappa, 1] exactly
      }
      const CMatrix a = random_with_singular_values(dim, sigma, rng);
      const CVector psi = state_with_row_overlap(a, c, rng);
      const BlockEncoding be = direct_encoding(a);
      PolarRunConfig cfg;
      cfg.eps = eps;
      cfg.delta = 1.0 / k;
      cfg.amplify = true;
      cfg.c = c;
      const PolarRunReport r = polar_transform(be, psi, cfg);
      rep.trials.push_back({k, c, r.residual, r.encoder_uses, r.degree, r.oaa_reps});
      rep.max_residual = std::max(rep.max_residual, r.residual);
      rep.all_within_eps = rep.all_within_eps && r.residual <= eps;
      total += static_cast<double>(r.encoder_uses);
    }
    mean_uses.push_back(total / trials_per_kappa);
  }
  if (kappas.size() >= 2) rep.kappa_exponent = fit_loglog_slope(kappas, mean_uses);
  return rep;
}

}  // namespace qpolar
