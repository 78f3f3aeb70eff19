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

#include "qpolar/qsvt.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace qpolar {

namespace {

constexpr std::size_t kDctNodes = 8192;
constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Chebyshev coefficients c_0..c_{count-1} of f on [-1, 1] via a DCT-II on
// the Chebyshev-Gauss nodes.
RVector chebyshev_coefficients(const std::function<double(double)>& f, std::size_t count) {
  std::vector<double> in(kDctNodes), out(kDctNodes);
  for (std::size_t m = 0; m < kDctNodes; ++m) {
    in[m] = f(std::cos((static_cast<double>(m) + 0.5) * kPi / kDctNodes));
  }
  {
    std::lock_guard lock(fftw_mutex());
    fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(kDctNodes), in.data(), out.data(),
                                      FFTW_REDFT10, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  RVector c(count);
  for (std::size_t j = 0; j < count; ++j) c[j] = out[j] / static_cast<double>(kDctNodes);
  return c;
}

// Incrementally evaluated Chebyshev series on a fixed grid.
class GridSeries {
 public:
  explicit GridSeries(RVector x) : x_(std::move(x)), t_prev_(x_.size(), 1.0), t_cur_(x_), sum_(x_.size(), 0.0) {}

  // Advance to T_{j+1}.
  void step() {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const double next = 2.0 * x_[i] * t_cur_[i] - t_prev_[i];
      t_prev_[i] = t_cur_[i];
      t_cur_[i] = next;
    }
  }
  void add(double c) {
    for (std::size_t i = 0; i < x_.size(); ++i) sum_[i] += c * t_cur_[i];
  }
  const RVector& x() const { return x_; }
  const RVector& sum() const { return sum_; }

 private:
  RVector x_, t_prev_, t_cur_, sum_;
};

RVector linspace(double a, double b, std::size_t n) {
  RVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

using Mat2 = std::array<cplx, 4>;  // row-major 2x2

}  // namespace

// ---- polynomials --------------------------------------------------------------

double OddPoly::operator()(double x) const {
  // Clenshaw recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (coeffs.empty() ? 0.0 : coeffs[0]);
}

OddPoly sign_poly(double delta, double eps) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error("sign_poly: delta must lie in (0, 1]");
  if (!(eps > 0.0 && eps < 1.0)) throw Error("sign_poly: eps must lie in (0, 1)");
  const double k = std::sqrt(2.0) / delta * std::sqrt(std::max(std::log(2.0 / (kPi * eps * eps)), 1.0));
  const RVector c = chebyshev_coefficients([k](double x) { return std::erf(k * x); }, kMaxDegree + 1);
  const double shrink = 1.0 / (1.0 + eps / 2.0);

  GridSeries band(linspace(delta, 1.0, 5000));
  GridSeries full(linspace(-1.0, 1.0, 10001));
  double best = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= kMaxDegree; d += 2) {
    if (d > 1) {
      band.step();
      band.step();
      full.step();
      full.step();
    }
    band.add(c[d]);
    full.add(c[d]);
    double band_err = 0.0, sup = 0.0;
    for (double v : band.sum()) band_err = std::max(band_err, std::abs(shrink * v - 1.0));
    for (double v : full.sum()) sup = std::max(sup, std::abs(shrink * v));
    best = std::min(best, std::max(band_err, sup - 1.0));
    if (band_err <= eps && sup <= 1.0 - eps / 8.0) {
      OddPoly p;
      p.degree = d;
      p.delta = delta;
      p.eps = eps;
      p.coeffs.assign(static_cast<std::size_t>(d) + 1, 0.0);
      for (int j = 1; j <= d; j += 2) p.coeffs[static_cast<std::size_t>(j)] = shrink * c[static_cast<std::size_t>(j)];
      return p;
    }
  }
  throw Error("sign_poly: eps = " + format_real(eps) + " is not reachable at degree cap " +
              std::to_string(kMaxDegree) + " for delta = " + format_real(delta) +
              "; best achievable error is " + format_real(best));
}

OddPoly scaled(const OddPoly& p, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("scaled: gamma must lie in (0, 1]");
  OddPoly q = p;
  for (auto& c : q.coeffs) c *= gamma;
  return q;
}

OddPoly chebyshev_poly(int d) {
  if (d < 1 || d % 2 == 0) throw Error("chebyshev_poly: degree must be odd and positive");
  OddPoly p;
  p.degree = d;
  p.coeffs.assign(static_cast<std::size_t>(d) + 1, 0.0);
  p.coeffs.back() = 1.0;
  return p;
}

double sign_error(const OddPoly& p, double delta, std::size_t points) {
  double err = 0.0;
  for (double x : linspace(delta, 1.0, points)) {
    err = std::max(err, std::abs(p(x) - 1.0));
    err = std::max(err, std::abs(p(-x) + 1.0));
  }
  return err;
}

double sup_norm(const OddPoly& p, std::size_t points) {
  double s = 0.0;
  for (double x : linspace(-1.0, 1.0, points)) s = std::max(s, std::abs(p(x)));
  return s;
}

// ---- phase finding ---------------------------------------------------------------

namespace {

// Residual and Jacobian of the symmetric W_x-convention QSP model
//   F(x) = Re <0| e^{i t_0 Z} prod_{j=1}^{d} W(x) e^{i t_j Z} |0>
// with respect to the reduced phases (first half of the symmetric vector).
struct QspModel {
  int d;
  std::size_t dt;
  RVector nodes;
  RVector target;

  RVector full_phases(const RVector& red) const {
    RVector ph(static_cast<std::size_t>(d) + 1);
    for (std::size_t j = 0; j < ph.size(); ++j) ph[j] = j < dt ? red[j] : red[static_cast<std::size_t>(d) - j];
    return ph;
  }

  // Returns residuals; fills jac (dt x dt row-major) when non-null.
  RVector evaluate(const RVector& red, std::vector<double>* jac) const {
    const RVector ph = full_phases(red);
    const std::size_t np = ph.size();
    RVector res(dt);
    if (jac) jac->assign(dt * dt, 0.0);
    std::vector<std::array<cplx, 2>> pre(np), suf(np);
    for (std::size_t m = 0; m < dt; ++m) {
      const double x = nodes[m];
      const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
      const cplx is{0.0, s};
      // Row 0 of the prefix before each Z factor.
      std::array<cplx, 2> row{1.0, 0.0};
      for (std::size_t j = 0; j < np; ++j) {
        pre[j] = row;
        const cplx e = std::polar(1.0, ph[j]);
        row = {row[0] * e, row[1] * std::conj(e)};
        if (j + 1 < np) row = {row[0] * x + row[1] * is, row[0] * is + row[1] * x};
      }
      // Column 0 of the suffix after each Z factor.
      std::array<cplx, 2> col{1.0, 0.0};
      for (std::size_t j = np; j-- > 0;) {
        suf[j] = col;
        const cplx e = std::polar(1.0, ph[j]);
        col = {e * col[0], std::conj(e) * col[1]};
        if (j > 0) col = {x * col[0] + is * col[1], is * col[0] + x * col[1]};
      }
      res[m] = (row[0]).real() - target[m];
      if (!jac) continue;
      for (std::size_t j = 0; j < np; ++j) {
        const cplx e = std::polar(1.0, ph[j]);
        const cplx v = pre[j][0] * cplx{0.0, 1.0} * e * suf[j][0] -
                       pre[j][1] * cplx{0.0, 1.0} * std::conj(e) * suf[j][1];
        const std::size_t jj = j < dt ? j : static_cast<std::size_t>(d) - j;
        (*jac)[m * dt + jj] += v.real();
      }
    }
    return res;
  }
};

double max_abs(const RVector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PhaseSequence find_phases(const OddPoly& p) {
  const int d = p.degree;
  if (d < 1 || d % 2 == 0) throw Error("find_phases: polynomial degree must be odd");
  if (sup_norm(p) > 1.0 + 1e-12) throw Error("find_phases: polynomial exceeds 1 in magnitude");

  QspModel model;
  model.d = d;
  model.dt = static_cast<std::size_t>(d + 2) / 2;
  model.nodes.resize(model.dt);
  model.target.resize(model.dt);
  for (std::size_t m = 0; m < model.dt; ++m) {
    model.nodes[m] = std::cos((2.0 * static_cast<double>(m + 1) - 1.0) * kPi / (4.0 * static_cast<double>(model.dt)));
    model.target[m] = p(model.nodes[m]);
  }

  RVector red(model.dt, 0.0);
  red[0] = kPi / 4.0;
  std::vector<double> jac;
  RVector res = model.evaluate(red, &jac);
  double err = max_abs(res);
  // Newton steps descend the 2-norm, so the line search uses it as the merit.
  const auto merit = [](const RVector& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  };
  double m = merit(res);
  int it = 0;
  constexpr int kMaxIter = 200;
  for (; it < kMaxIter && err > 1e-13; ++it) {
    RVector step = solve_real(jac, res);
    double scale = 1.0;
    RVector trial(model.dt);
    double trial_m = 0.0;
    for (int halvings = 0; halvings < 30; ++halvings) {
      for (std::size_t j = 0; j < model.dt; ++j) trial[j] = red[j] - scale * step[j];
      trial_m = merit(model.evaluate(trial, nullptr));
      if (trial_m < m || halvings == 29) break;
      scale *= 0.5;
    }
    if (!(trial_m < m)) break;  // stalled at round-off
    red = trial;
    res = model.evaluate(red, &jac);
    err = max_abs(res);
    m = merit(res);
  }
  if (err > 1e-8) {
    throw ConvergenceError("find_phases: Newton iteration stalled with residual " + format_real(err) +
                               " after " + std::to_string(it) + " iterations",
                           err);
  }

  PhaseSequence out;
  out.wx_phases = model.full_phases(red);
  out.residual = err;
  out.iterations = it;
  // W = i e^{-i pi/4 Z} R e^{-i pi/4 Z}; fold the end phases and i^d into phi_1.
  const RVector& th = out.wx_phases;
  out.phis.resize(static_cast<std::size_t>(d));
  out.phis[0] = th[0] + th[static_cast<std::size_t>(d)] - kPi / 2.0 + d * kPi / 2.0;
  for (int j = 1; j < d; ++j) out.phis[static_cast<std::size_t>(j)] = th[static_cast<std::size_t>(j)] - kPi / 2.0;
  return out;
}

cplx qsp_response(const RVector& phis, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  cplx v0 = 1.0, v1 = 0.0;
  for (double phi : phis) {
    const cplx e = std::polar(1.0, phi);
    const cplx a0 = v0 * e, a1 = v1 * std::conj(e);
    v0 = a0 * x + a1 * s;
    v1 = a0 * s - a1 * x;
  }
  return v0;
}

// ---- projectors ------------------------------------------------------------------

Projector Projector::ancilla_zero(unsigned a, unsigned n) {
  Projector p;
  p.dim_ = std::size_t{1} << (a + n);
  p.zero_block_ = std::size_t{1} << n;
  return p;
}

Projector Projector::from_basis(const CMatrix& q) {
  if (frobenius_norm(q.adjoint() * q - CMatrix::identity(q.cols())) > 1e-9) {
    throw Error("Projector::from_basis: columns are not orthonormal");
  }
  Projector p;
  p.dim_ = q.rows();
  p.basis_ = q;
  return p;
}

Projector Projector::from_state(const CVector& v) { return from_basis(CMatrix::column(normalized(v))); }

CVector Projector::apply(const CVector& x) const {
  if (x.size() != dim_) throw Error("Projector::apply: dimension mismatch");
  if (zero_block_) {
    CVector y(dim_, 0.0);
    std::copy_n(x.begin(), zero_block_, y.begin());
    return y;
  }
  CVector coeff(basis_.cols());
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += std::conj(basis_(i, j)) * x[i];
    coeff[j] = s;
  }
  return basis_ * coeff;
}

CMatrix Projector::matrix() const {
  if (zero_block_) {
    CMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < zero_block_; ++i) m(i, i) = 1.0;
    return m;
  }
  return basis_ * basis_.adjoint();
}

ProjectorPair standard_projectors(const BlockEncoding& be) {
  return {Projector::ancilla_zero(be.a, be.n), Projector::ancilla_zero(be.a, be.n)};
}

// ---- U_Phi -------------------------------------------------------------------------

PhaseCircuit::PhaseCircuit(const BlockEncoding& be, PhaseSequence phases, ProjectorPair pp)
    : be_(be), u_adj_(be.U.adjoint()), phases_(std::move(phases)), pp_(std::move(pp)) {
  if (phases_.phis.empty() || phases_.phis.size() % 2 == 0) {
    throw Error("PhaseCircuit: phase sequence must have odd length");
  }
  if (pp_.pi.dim() != be_.dim() || pp_.pi_tilde.dim() != be_.dim()) {
    throw Error("PhaseCircuit: projector dimensions do not match the block-encoding");
  }
}

void PhaseCircuit::phase(CVector& x, double phi, const Projector& p, bool) const {
  // e^{i phi (2P - I)} = e^{-i phi} I + (e^{i phi} - e^{-i phi}) P
  const cplx em = std::polar(1.0, -phi);
  const cplx diff{0.0, 2.0 * std::sin(phi)};
  const CVector px = p.apply(x);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = em * x[i] + diff * px[i];
}

namespace {

void hadamard_top(CVector& x) {
  const std::size_t h = x.size() / 2;
  for (std::size_t i = 0; i < h; ++i) {
    const cplx a = x[i], b = x[i + h];
    x[i] = (a + b) * M_SQRT1_2;
    x[i + h] = (a - b) * M_SQRT1_2;
  }
}

}  // namespace

CVector PhaseCircuit::apply(const CVector& x, QueryLedger* ledger) const {
  if (x.size() != dim()) throw Error("PhaseCircuit::apply: dimension mismatch");
  const std::size_t D = be_.dim();
  const std::size_t d = degree();
  CVector y = x;
  hadamard_top(y);
  CVector y0(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(D));
  CVector y1(y.begin() + static_cast<std::ptrdiff_t>(D), y.end());
  for (std::size_t j = d; j >= 1; --j) {
    const CMatrix& op = ((d - j) % 2 == 0) ? be_.U : u_adj_;
    y0 = op * y0;
    y1 = op * y1;
    const Projector& p = (j % 2 == 1) ? pp_.pi_tilde : pp_.pi;
    phase(y0, phases_.phis[j - 1], p, false);
    phase(y1, -phases_.phis[j - 1], p, false);
  }
  std::copy(y0.begin(), y0.end(), y.begin());
  std::copy(y1.begin(), y1.end(), y.begin() + static_cast<std::ptrdiff_t>(D));
  hadamard_top(y);
  if (ledger) ledger->charge_all(be_.per_use, d);
  return y;
}

CVector PhaseCircuit::apply_adjoint(const CVector& x, QueryLedger* ledger) const {
  if (x.size() != dim()) throw Error("PhaseCircuit::apply_adjoint: dimension mismatch");
  const std::size_t D = be_.dim();
  const std::size_t d = degree();
  CVector y = x;
  hadamard_top(y);
  CVector y0(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(D));
  CVector y1(y.begin() + static_cast<std::ptrdiff_t>(D), y.end());
  for (std::size_t j = 1; j <= d; ++j) {
    const Projector& p = (j % 2 == 1) ? pp_.pi_tilde : pp_.pi;
    phase(y0, -phases_.phis[j - 1], p, true);
    phase(y1, phases_.phis[j - 1], p, true);
    const CMatrix& op = ((d - j) % 2 == 0) ? u_adj_ : be_.U;
    y0 = op * y0;
    y1 = op * y1;
  }
  std::copy(y0.begin(), y0.end(), y.begin());
  std::copy(y1.begin(), y1.end(), y.begin() + static_cast<std::ptrdiff_t>(D));
  hadamard_top(y);
  if (ledger) ledger->charge_all(be_.per_use, d);
  return y;
}

CMatrix PhaseCircuit::matrix(QueryLedger* ledger) const {
  const std::size_t D = be_.dim();
  const std::size_t d = degree();
  CMatrix m0 = CMatrix::identity(D), m1 = CMatrix::identity(D);
  auto phase_rows = [](CMatrix& m, double phi, const Projector& p) {
    const cplx em = std::polar(1.0, -phi);
    const cplx diff{0.0, 2.0 * std::sin(phi)};
    const CMatrix pm = p.matrix() * m;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = em * m(i, j) + diff * pm(i, j);
  };
  for (std::size_t j = d; j >= 1; --j) {
    const CMatrix& op = ((d - j) % 2 == 0) ? be_.U : u_adj_;
    m0 = op * m0;
    m1 = op * m1;
    const Projector& p = (j % 2 == 1) ? pp_.pi_tilde : pp_.pi;
    phase_rows(m0, phases_.phis[j - 1], p);
    phase_rows(m1, -phases_.phis[j - 1], p);
  }
  CMatrix full(2 * D, 2 * D);
  const CMatrix plus = 0.5 * (m0 + m1);
  const CMatrix minus = 0.5 * (m0 - m1);
  full.set_block(0, 0, plus);
  full.set_block(0, D, minus);
  full.set_block(D, 0, minus);
  full.set_block(D, D, plus);
  if (ledger) ledger->charge_all(be_.per_use, d);
  return full;
}

CMatrix build_UPhi(const BlockEncoding& be, const PhaseSequence& phases, const ProjectorPair& pp,
                   QueryLedger* ledger) {
  return PhaseCircuit(be, phases, pp).matrix(ledger);
}

CMatrix exact_svt_oracle(const BlockEncoding& be, const OddPoly& p) {
  const CMatrix blk = be.U.block(0, 0, be.system_dim(), be.system_dim());
  const SvdResult s = svd(blk);
  CMatrix w = s.W;
  for (std::size_t j = 0; j < s.rank; ++j) {
    const double f = p(s.sigma[j]);
    for (std::size_t i = 0; i < w.rows(); ++i) w(i, j) *= f;
  }
  return w * s.V.adjoint();
}

// ---- amplification -----------------------------------------------------------------

namespace {

void check_reps(int n_reps) {
  if (n_reps < 1 || n_reps % 2 == 0) {
    throw Error("oaa: repetition count must be a positive odd integer, got " + std::to_string(n_reps));
  }
}

CMatrix reflection(const Projector& p) { return CMatrix::identity(p.dim()) - 2.0 * p.matrix(); }

}  // namespace

CMatrix oaa(const CMatrix& u, const Projector& pi, const Projector& pi_tilde, int n_reps) {
  check_reps(n_reps);
  if (pi.dim() != u.rows() || pi_tilde.dim() != u.rows()) throw Error("oaa: dimension mismatch");
  const CMatrix s = -1.0 * (u * reflection(pi) * u.adjoint() * reflection(pi_tilde));
  CMatrix out = u;
  for (int k = 0; k < (n_reps - 1) / 2; ++k) out = s * out;
  return out;
}

CVector oaa_apply(const LinearMap& u, const LinearMap& u_adj, const Projector& pi,
                  const Projector& pi_tilde, int n_reps, const CVector& x) {
  check_reps(n_reps);
  auto reflect = [](const Projector& p, CVector v) {
    const CVector pv = p.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= 2.0 * pv[i];
    return v;
  };
  CVector y = u(x);
  for (int k = 0; k < (n_reps - 1) / 2; ++k) {
    y = reflect(pi_tilde, std::move(y));
    y = u_adj(y);
    y = reflect(pi, std::move(y));
    y = u(y);
    for (auto& z : y) z = -z;
  }
  return y;
}

}  // namespace qpolar
