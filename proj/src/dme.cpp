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

#include "qpolar/dme.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "qpolar/rng.hpp"

namespace qpolar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxLmrDim = 2048;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// In-place DFT of `howmany` interleaved sequences of length n, scaled by 1/sqrt(n).
void dft_many(cplx* data, std::size_t n, std::size_t howmany, std::size_t stride, std::size_t dist, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  const int len = static_cast<int>(n);
  fftw_plan plan;
  {
    std::lock_guard lock(plan_mutex());
    plan = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), p, nullptr, static_cast<int>(stride),
                              static_cast<int>(dist), p, nullptr, static_cast<int>(stride),
                              static_cast<int>(dist), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  if (stride == 1) {
    for (std::size_t h = 0; h < howmany; ++h)
      for (std::size_t i = 0; i < n; ++i) data[h * dist + i] *= s;
  } else {
    for (std::size_t h = 0; h < howmany; ++h)
      for (std::size_t i = 0; i < n; ++i) data[h * dist + i * stride] *= s;
  }
}

double row_overlap(const CMatrix& a, const CVector& psi) {
  const SvdResult s = svd(a);
  return norm2(column_projector(s.V) * psi);
}

// ---- exact phase estimation in the eigenbasis of H ----

struct EigenQpe {
  EighResult eig;
  CVector beta;   // input in the eigenbasis
  CVector alpha;  // row j holds alpha_{k|j}, length M * T
  std::size_t T = 0;
  double t0 = 0.0;
};

EigenQpe eigen_qpe(const Embedding& emb, double t0, std::size_t T, const CVector& input) {
  validate_T(t0, T);
  const std::size_t m = emb.H.rows();
  if (input.size() != m) throw Error("qpe: input dimension does not match H");
  EigenQpe q;
  q.T = T;
  q.t0 = t0;
  q.eig = eigh(emb.H);
  q.beta = q.eig.vectors.adjoint() * input;
  const RVector h = helper_state(T);
  q.alpha.assign(m * T, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (q.eig.values[j] + 1.0) * t0 / (2.0 * static_cast<double>(T));
    for (std::size_t tau = 0; tau < T; ++tau) q.alpha[j * T + tau] = h[tau] * std::polar(1.0, w * static_cast<double>(tau));
  }
  dft_many(q.alpha.data(), T, m, 1, T, FFTW_FORWARD);
  return q;
}

// sum_j coeff_j[tau] u_j, laid out tau * M + i.
CVector assemble(const EighResult& eig, const CVector& coeff, std::size_t T) {
  const std::size_t m = eig.vectors.rows();
  CVector out(T * m, 0.0);
  for (std::size_t tau = 0; tau < T; ++tau)
    for (std::size_t j = 0; j < m; ++j) {
      const cplx c = coeff[j * T + tau];
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) out[tau * m + i] += c * eig.vectors(i, j);
    }
  return out;
}

// ---- LMR superoperators for the controlled evolution ----

// One copy of `tau` with sign s: action on the (1,1) block as an M^2 x M^2
// matrix over row-major vec(X), and the left factor on the (1,0) block.
struct CopyMaps {
  CMatrix phi;
  CMatrix left;
};

CopyMaps copy_maps(const CMatrix& tau, double dt, double s) {
  const std::size_t m = tau.rows();
  const double c = std::cos(dt), sn = std::sin(dt);
  const cplx k{0.0, s * c * sn};
  CopyMaps maps;
  maps.phi = CMatrix(m * m, m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t row = a * m + b;
      maps.phi(row, row) += c * c;
      for (std::size_t q = 0; q < m; ++q) maps.phi(row, q * m + q) += sn * sn * tau(a, b);
      for (std::size_t q = 0; q < m; ++q) {
        maps.phi(row, a * m + q) += k * tau(q, b);   // X tau
        maps.phi(row, q * m + b) -= k * tau(a, q);   // tau X
      }
    }
  maps.left = CMatrix::identity(m) * cplx{c} - tau * cplx{0.0, s * sn};
  return maps;
}

CMatrix matrix_power(CMatrix base, std::uint64_t e) {
  CMatrix result = CMatrix::identity(base.rows());
  while (e) {
    if (e & 1) result = base * result;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

struct ControlledMaps {
  CMatrix phi;
  CMatrix left;  // includes the global phase of the identity term
};

// Controlled e^{i sign (H + I) t} via n steps; sign = +1 uses (rho_tilde, +1), (rho, -1) per step.
ControlledMaps controlled_evolution(const DmeStates& st, double t, std::uint64_t n, int sign) {
  const double dt = t / static_cast<double>(n);
  const CMatrix& first = sign > 0 ? st.rho_tilde : st.rho;
  const CMatrix& second = sign > 0 ? st.rho : st.rho_tilde;
  const CopyMaps a = copy_maps(first, dt, +1.0);
  const CopyMaps b = copy_maps(second, dt, -1.0);
  ControlledMaps out;
  out.phi = matrix_power(b.phi * a.phi, n);
  out.left = matrix_power(b.left * a.left, n) * std::polar(1.0, sign * t);
  return out;
}

// Apply a controlled map for control bit `bit` of the tau register to every block of rho.
void apply_controlled(CMatrix& rho, std::size_t T, std::size_t m, unsigned bit, const ControlledMaps& cm) {
  const CMatrix left_adj = cm.left.adjoint();
  CMatrix x(m, m);
  CVector v(m * m);
  for (std::size_t t1 = 0; t1 < T; ++t1)
    for (std::size_t t2 = 0; t2 < T; ++t2) {
      const bool b1 = (t1 >> bit) & 1, b2 = (t2 >> bit) & 1;
      if (!b1 && !b2) continue;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, j) = rho(t1 * m + i, t2 * m + j);
      CMatrix y;
      if (b1 && b2) {
        for (std::size_t i = 0; i < m * m; ++i) v[i] = x.data()[i];
        const CVector w = cm.phi * v;
        y = CMatrix(m, m);
        for (std::size_t i = 0; i < m * m; ++i) y.data()[i] = w[i];
      } else if (b1) {
        y = cm.left * x;
      } else {
        y = x * left_adj;
      }
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rho(t1 * m + i, t2 * m + j) = y(i, j);
    }
}

// rho -> (F (x) I) rho (F (x) I)^dagger along the tau register; sign selects F.
void transform_control(CMatrix& rho, std::size_t T, std::size_t m, int sign) {
  const std::size_t d = rho.rows();
  dft_many(rho.data(), T, m * d, m * d, 1, sign);
  rho = rho.adjoint();
  dft_many(rho.data(), T, m * d, m * d, 1, sign);
  rho = rho.adjoint();
}

// Trace distance between a density matrix and a pure state. rho - |t><t| has
// at most one negative eigenvalue and zero trace, so the distance is minus
// that eigenvalue; Lanczos started from t resolves it.
double pure_trace_distance(const CMatrix& rho, const CVector& t) {
  const std::size_t d = t.size();
  const std::size_t kmax = std::min<std::size_t>(d, 120);
  auto apply = [&](const CVector& v) {
    CVector w = rho * v;
    const cplx ov = inner(t, v);
    for (std::size_t i = 0; i < d; ++i) w[i] -= ov * t[i];
    return w;
  };
  std::vector<CVector> basis{normalized(t)};
  RVector alpha, beta;
  for (std::size_t k = 0; k < kmax; ++k) {
    CVector w = apply(basis[k]);
    alpha.push_back(inner(basis[k], w).real());
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& b : basis) {
        const cplx ov = inner(b, w);
        for (std::size_t i = 0; i < d; ++i) w[i] -= ov * b[i];
      }
    const double nb = norm2(w);
    if (nb < 1e-13 || k + 1 == kmax) break;
    beta.push_back(nb);
    basis.push_back((1.0 / nb) * w);
  }
  const std::size_t k = alpha.size();
  CMatrix tri(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    tri(i, i) = alpha[i];
    if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
  }
  return std::max(0.0, -eigh(tri).values[0]);
}

}  // namespace

Embedding embed(const CMatrix& a, std::size_t r) {
  if (a.rows() != a.cols()) throw Error("embed: matrix must be square");
  if (r == 0) throw Error("embed: r must be positive");
  const std::size_t n = a.rows();
  Embedding e;
  e.A = a;
  e.r = r;
  e.H = CMatrix(2 * n, 2 * n);
  const cplx s{1.0 / static_cast<double>(r)};
  e.H.set_block(0, n, a.adjoint() * s);
  e.H.set_block(n, 0, a * s);
  return e;
}

DmeStates dme_states(const PairSet& ps) {
  ps.validate();
  const std::size_t n = ps.dim(), r = ps.r();
  DmeStates st{CMatrix(2 * n, 2 * n), CMatrix(2 * n, 2 * n)};
  const cplx w{1.0 / (2.0 * static_cast<double>(r))};
  for (std::size_t j = 0; j < r; ++j) {
    CVector v(2 * n), vt(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = vt[i] = ps.F(i, j);
      v[n + i] = ps.G(i, j);
      vt[n + i] = -ps.G(i, j);
    }
    st.rho += outer(v, v) * w;
    st.rho_tilde += outer(vt, vt) * w;
  }
  return st;
}

RVector helper_state(std::size_t T) {
  if (T < 2) throw Error("helper_state: T must be at least 2");
  RVector h(T);
  const double s = std::sqrt(2.0 / static_cast<double>(T));
  for (std::size_t tau = 0; tau < T; ++tau) h[tau] = s * std::sin(kPi * (static_cast<double>(tau) + 0.5) / static_cast<double>(T));
  return h;
}

double filter_f(double x, const FilterParams& fp) {
  if (!(fp.kappa >= 1.0) || fp.r == 0) throw Error("filter_f: need kappa >= 1 and r >= 1");
  const double a = 1.0 / (fp.kappa * static_cast<double>(fp.r));
  const double h = a / 2.0;
  if (x >= a) return 1.0;
  if (x >= h) return std::sin(kPi / 2.0 * (x - h) / (a - h));
  if (x >= -h) return 0.0;
  if (x >= -a) return std::sin(kPi / 2.0 * (x + h) / (a - h));
  return -1.0;
}

std::array<double, 2> flag_state(double x, const FilterParams& fp) {
  const double f = filter_f(x, fp);
  return {std::sqrt(std::max(0.0, 1.0 - f * f)), f};
}

double decode(std::size_t k, double t0) { return 4.0 * kPi * static_cast<double>(k) / t0 - 1.0; }

CMatrix flag_rotation(double t0, std::size_t T, const FilterParams& fp) {
  CMatrix u(2 * T, 2 * T);
  for (std::size_t k = 0; k < T; ++k) {
    const auto [ill, well] = flag_state(decode(k, t0), fp);
    u(2 * k, 2 * k) = ill;
    u(2 * k + 1, 2 * k) = well;
    u(2 * k, 2 * k + 1) = -well;
    u(2 * k + 1, 2 * k + 1) = ill;
  }
  return u;
}

std::size_t choose_T(double t0) {
  if (!(t0 > 0.0)) throw Error("choose_T: t0 must be positive");
  std::size_t T = 2;
  while (static_cast<double>(T) < 4.0 * t0) T *= 2;
  return T;
}

void validate_T(double t0, std::size_t T) {
  if (!(t0 > 0.0)) throw Error("qpe: t0 must be positive");
  if (T < 2 || !is_pow2(T)) throw Error("qpe: T = " + std::to_string(T) + " is not a power of two >= 2");
  if (static_cast<double>(T) < t0 / kPi) {
    throw Error("qpe: T = " + std::to_string(T) + " aliases eigenvalues for t0 = " + format_real(t0) +
                "; use T >= " + std::to_string(choose_T(t0)));
  }
}

CVector qpe_exact(const Embedding& emb, double t0, std::size_t T, const CVector& input) {
  const EigenQpe q = eigen_qpe(emb, t0, T, input);
  const std::size_t m = emb.H.rows();
  CVector coeff(m * T);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < T; ++k) coeff[j * T + k] = q.beta[j] * q.alpha[j * T + k];
  return assemble(q.eig, coeff, T);
}

CMatrix lmr_channel(const CMatrix& rho, const CMatrix& rho_tilde, double t, std::uint64_t n_steps,
                    const CMatrix& sigma, QueryLedger* ledger) {
  if (n_steps == 0) throw Error("lmr_channel: need at least one step");
  if (rho.rows() != sigma.rows() || rho_tilde.rows() != sigma.rows()) throw Error("lmr_channel: dimension mismatch");
  const double dt = t / static_cast<double>(n_steps);
  const double c = std::cos(dt), sn = std::sin(dt);
  auto step = [&](const CMatrix& x, const CMatrix& tau, double s) {
    CMatrix y = x * cplx{c * c} + tau * cplx{sn * sn * x.trace()};
    y += (x * tau - tau * x) * cplx{0.0, s * c * sn};
    return y;
  };
  CMatrix x = sigma;
  for (std::uint64_t k = 0; k < n_steps; ++k) {
    x = step(x, rho, +1.0);
    x = step(x, rho_tilde, -1.0);
  }
  if (ledger) ledger->charge("rho_copies", 2 * n_steps);
  return x;
}

CMatrix lmr_channel_reference(const CMatrix& rho, const CMatrix& rho_tilde, double t, std::uint64_t n_steps,
                              const CMatrix& sigma, QueryLedger* ledger) {
  if (n_steps == 0) throw Error("lmr_channel: need at least one step");
  const std::size_t m = sigma.rows();
  if (rho.rows() != m || rho_tilde.rows() != m) throw Error("lmr_channel: dimension mismatch");
  const double dt = t / static_cast<double>(n_steps);
  const CMatrix swap = swap_operator(m);
  const CMatrix id = CMatrix::identity(m * m);
  const CMatrix u_plus = id * cplx{std::cos(dt)} - swap * cplx{0.0, std::sin(dt)};
  const CMatrix u_minus = id * cplx{std::cos(dt)} + swap * cplx{0.0, std::sin(dt)};
  CMatrix x = sigma;
  for (std::uint64_t k = 0; k < n_steps; ++k) {
    x = partial_trace_right(apply_channel(u_plus, kron(x, rho)), m, m);
    x = partial_trace_right(apply_channel(u_minus, kron(x, rho_tilde)), m, m);
  }
  if (ledger) ledger->charge("rho_copies", 2 * n_steps);
  return x;
}

DmeConfig dme_config_for(const PairSet& ps, const CVector& psi, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("dme: eps must lie in (0, 1)");
  const CMatrix a = procrustes_matrix(ps);
  const double k = kappa(a);
  const double c = row_overlap(a, psi);
  if (c <= 0.0) throw Error("dme: input has no overlap with the row space");
  DmeConfig cfg;
  cfg.t0 = kT0Constant * static_cast<double>(ps.r()) * k / (std::sqrt(c) * eps);
  cfg.T = choose_T(cfg.t0);
  cfg.eps_d = std::sqrt(c) * eps / 2.0;
  return cfg;
}

DmeRun run_algorithm3(const PairSet& ps, const CVector& psi, const DmeConfig& cfg) {
  ps.validate();
  if (psi.size() != ps.dim()) throw Error("dme: state dimension mismatch");
  if (!is_normalized(psi)) throw Error("dme: input state is not normalized");
  const std::size_t n = ps.dim(), m = 2 * n, r = ps.r();
  const CMatrix a = procrustes_matrix(ps);
  const Embedding emb = embed(a, r);

  DmeRun run;
  run.t0 = cfg.t0;
  run.T = cfg.T ? cfg.T : choose_T(cfg.t0);
  run.eps_d = cfg.eps_d;
  run.kappa = kappa(a);
  // kappa can round just below 1 for isometries; the filter needs kappa >= 1.
  run.filter_kappa = cfg.filter_kappa.value_or(std::max(1.0, run.kappa));
  validate_T(run.t0, run.T);
  const double c = row_overlap(a, psi);
  if (c <= 1e-12) throw Error("dme: input has no overlap with the row space of F^dagger");
  if (run.filter_kappa < run.kappa) {
    run.warnings.push_back("filter kappa " + format_real(run.filter_kappa) + " is below 1/sigma_min = " +
                           format_real(run.kappa) + "; the smallest singular values are partially filtered");
  }
  const FilterParams fp{run.filter_kappa, r};
  const std::size_t T = run.T;

  CVector input(m, 0.0);
  std::copy(psi.begin(), psi.end(), input.begin());
  const RVector h = helper_state(T);
  const CVector ideal = normalized(polar_oracle(a).U * psi);
  run.target.assign(T * m, 0.0);
  for (std::size_t tau = 0; tau < T; ++tau)
    for (std::size_t i = 0; i < n; ++i) run.target[tau * m + n + i] = h[tau] * ideal[i];

  // Exact pipeline: QPE, filter on the well branch, uncompute.
  const EigenQpe q = eigen_qpe(emb, run.t0, T, input);
  CVector coeff(m * T);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < T; ++k) coeff[j * T + k] = q.alpha[j * T + k] * filter_f(decode(k, run.t0), fp);
  dft_many(coeff.data(), T, m, 1, T, FFTW_BACKWARD);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (q.eig.values[j] + 1.0) * run.t0 / (2.0 * static_cast<double>(T));
    for (std::size_t tau = 0; tau < T; ++tau)
      coeff[j * T + tau] *= q.beta[j] * std::polar(1.0, -w * static_cast<double>(tau));
  }
  CVector exact = assemble(q.eig, coeff, T);
  const double exact_norm = norm2(exact);
  if (exact_norm <= 1e-14) throw Error("dme: post-selection on the well flag has zero probability");
  exact = (1.0 / exact_norm) * exact;

  CVector filtered(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const cplx w = q.beta[j] * filter_f(q.eig.values[j], fp);
    for (std::size_t i = 0; i < m; ++i) filtered[i] += w * q.eig.vectors(i, j);
  }
  filtered = normalized(filtered);
  CVector ideal_filtered(T * m);
  for (std::size_t tau = 0; tau < T; ++tau)
    for (std::size_t i = 0; i < m; ++i) ideal_filtered[tau * m + i] = h[tau] * filtered[i];

  if (cfg.mode == DmeMode::Exact) {
    run.success_prob = exact_norm * exact_norm;
    run.output = exact;
    run.residual = l2_distance(exact, run.target);
    run.qpe_residual = l2_distance(exact, ideal_filtered);
    return run;
  }

  // LMR pipeline on density matrices.
  const std::size_t d = T * m;
  if (d > kMaxLmrDim) {
    throw Error("dme: lmr mode needs a density matrix of dimension " + std::to_string(d) + " (limit " +
                std::to_string(kMaxLmrDim) + "); reduce t0");
  }
  if (!(cfg.eps_d > 0.0)) throw Error("dme: eps_D must be positive");
  const DmeStates st = dme_states(ps);
  CVector x0(d, 0.0);
  for (std::size_t tau = 0; tau < T; ++tau)
    for (std::size_t i = 0; i < m; ++i) x0[tau * m + i] = h[tau] * input[i];
  CMatrix rho = outer(x0, x0);
  const unsigned bits = log2_exact(T);
  std::vector<std::uint64_t> steps(bits);
  std::vector<double> times(bits);
  for (unsigned i = 0; i < bits; ++i) {
    times[i] = run.t0 * std::ldexp(1.0, static_cast<int>(i)) / (2.0 * static_cast<double>(T));
    const double delta_i = cfg.eps_d * std::ldexp(1.0, static_cast<int>(i)) / static_cast<double>(T);
    steps[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(times[i] * times[i] / delta_i)));
  }
  for (unsigned i = 0; i < bits; ++i) {
    apply_controlled(rho, T, m, i, controlled_evolution(st, times[i], steps[i], +1));
    run.ledger.charge("rho_copies", 2 * steps[i]);
  }
  transform_control(rho, T, m, FFTW_FORWARD);
  for (std::size_t k1 = 0; k1 < T; ++k1) {
    const double f1 = filter_f(decode(k1, run.t0), fp);
    for (std::size_t k2 = 0; k2 < T; ++k2) {
      const double f = f1 * filter_f(decode(k2, run.t0), fp);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rho(k1 * m + i, k2 * m + j) *= f;
    }
  }
  run.success_prob = rho.trace().real();
  if (run.success_prob <= 1e-14) throw Error("dme: post-selection on the well flag has zero probability");
  transform_control(rho, T, m, FFTW_BACKWARD);
  for (unsigned i = bits; i-- > 0;) {
    apply_controlled(rho, T, m, i, controlled_evolution(st, times[i], steps[i], -1));
    run.ledger.charge("rho_copies", 2 * steps[i]);
  }
  rho *= cplx{1.0 / rho.trace().real()};
  run.output_rho = std::move(rho);
  run.output = exact;
  run.residual = pure_trace_distance(run.output_rho, run.target);
  run.qpe_residual = pure_trace_distance(run.output_rho, ideal_filtered);
  run.exact_gap = pure_trace_distance(run.output_rho, exact);
  return run;
}

LipschitzReport lipschitz_check(const FilterParams& fp, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const double a = 1.0 / (fp.kappa * static_cast<double>(fp.r));
  LipschitzReport rep;
  rep.bound = kPi * fp.kappa * static_cast<double>(fp.r);
  for (std::size_t s = 0; s < samples; ++s) {
    double x, y;
    switch (s % 3) {
      case 0:
        x = rng.uniform(-1.0, 1.0);
        y = rng.uniform(-1.0, 1.0);
        break;
      case 1:
        x = rng.uniform(-1.2 * a, 1.2 * a);
        y = rng.uniform(-1.2 * a, 1.2 * a);
        break;
      default:
        x = rng.uniform(-1.2 * a, 1.2 * a);
        y = std::clamp(x + rng.uniform(-1e-3, 1e-3) * a, -1.0, 1.0);
        break;
    }
    if (x == y) continue;
    const double dx = std::abs(x - y);
    const auto hx = flag_state(x, fp), hy = flag_state(y, fp);
    rep.max_ratio_f = std::max(rep.max_ratio_f, std::abs(filter_f(x, fp) - filter_f(y, fp)) / dx);
    rep.max_ratio_h = std::max(rep.max_ratio_h, std::hypot(hx[0] - hy[0], hx[1] - hy[1]) / dx);
  }
  rep.holds = rep.max_ratio_f <= rep.bound * (1.0 + 1e-9) && rep.max_ratio_h <= rep.bound * (1.0 + 1e-9);
  return rep;
}

}  // namespace qpolar
