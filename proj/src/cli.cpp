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

#include "qpolar/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qpolar/dme.hpp"
#include "qpolar/kernels.hpp"
#include "qpolar/pgm.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/procrustes.hpp"
#include "qpolar/qsvt.hpp"
#include "qpolar/rng.hpp"

namespace qpolar::cli {

namespace {

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw Error("csv: row has the wrong number of columns");
    rows_.push_back(cells);
  }

  void write(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double x) { return format_real(x); }
std::string num(unsigned long x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

CVector read_state(const std::string& path) {
  const CMatrix m = read_matrix_file(path);
  if (m.cols() != 1) throw Error(path + ": state file must hold a single column");
  CVector v = m.col(0);
  if (!is_normalized(v, 1e-9)) throw Error(path + ": state is not normalized");
  return v;
}

CVector pad_state(const CVector& v, std::size_t dim) {
  CVector out(dim, 0.0);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

struct Options {
  std::uint64_t seed = 1;
  std::string out_path;
  std::string matrix, state, ensemble, omega, pairs;
  double eps = 1e-3;
  double delta = 0.0;
  double c = 0.0;
  bool amplify = false;
  std::uint64_t shots = 0;
  std::vector<double> t0_grid{100.0, 200.0, 400.0, 800.0};
  std::size_t T = 0;
  double eps_d = 1e-2;
  double filter_kappa = 0.0;
  std::string mode = "exact";
  std::string phases_out;
};

Csv run_polar(const Options& o) {
  const CMatrix a = read_matrix_file(o.matrix);
  const CVector psi = read_state(o.state);
  if (a.rows() != a.cols()) throw Error("polar: matrix must be square");
  if (psi.size() != a.cols()) throw Error("polar: state dimension does not match the matrix");
  const double alpha = spectral_norm(a);
  if (alpha <= 0.0) throw Error("polar: matrix is zero");
  const BlockEncoding be = direct_encoding(a, alpha);
  const SvdResult s = svd(a);
  double delta = o.delta > 0.0 ? o.delta : s.sigma[s.rank - 1] / alpha;
  if (delta > 1.0 - 1e-12) delta = 1.0;
  PolarRunConfig cfg;
  cfg.eps = o.eps;
  cfg.delta = delta;
  cfg.amplify = o.amplify;
  if (o.c > 0.0) cfg.c = o.c;
  const PolarRunReport r = polar_transform(be, pad_state(psi, be.system_dim()), cfg);
  Csv csv({"dims", "alpha", "kappa", "degree", "oaa_reps", "encoder_uses", "residual"});
  csv.row({num(a.rows()), num(alpha), num(kappa(a)), num(r.degree), num(r.oaa_reps), num(r.encoder_uses),
           num(r.residual)});
  return csv;
}

Csv run_pgm(const Options& o) {
  const Ensemble e = load_ensemble(o.ensemble);
  const CVector omega = read_state(o.omega);
  Rng rng(o.seed);
  const PgmRun run = pgm_circuit(e, omega, o.eps, o.shots, &rng);
  const PgmDistribution oracle = qpgm_oracle(e, omega);
  const CostModel cost = cost_models(run.kappa_a, static_cast<double>(e.r()), 1.0, 1.0);
  Csv csv({"r", "kappa_A", "eps", "d_tv", "uses_up", "uses_uphi", "petz_cost", "polar_cost"});
  csv.row({num(e.r()), num(run.kappa_a), num(o.eps), num(tv_distance(run.dist.probs, oracle.probs)),
           num(run.polar.ledger.count("u_p")), num(run.polar.ledger.count("u_phi")), num(cost.petz),
           num(cost.polar)});
  return csv;
}

Csv run_procrustes(const Options& o) {
  const PairSet ps = load_pairs(o.pairs);
  const CVector psi = read_state(o.state);
  std::optional<double> c_lower;
  if (o.c > 0.0) c_lower = o.c;
  const ProcrustesRun run = procrustes_circuit(ps, psi, o.eps, c_lower);
  Csv csv({"N", "r", "kappa", "residual", "uses_cupsi", "uses_cuphi", "oaa_reps"});
  csv.row({num(ps.dim()), num(ps.r()), num(run.kappa), num(run.polar.residual),
           num(run.polar.ledger.count("cu_psi")), num(run.polar.ledger.count("cu_phi")),
           num(run.polar.oaa_reps)});
  return csv;
}

Csv run_dme(const Options& o, std::ostream& err) {
  const PairSet ps = load_pairs(o.pairs);
  const CVector psi = read_state(o.state);
  if (o.mode != "exact" && o.mode != "lmr") throw Error("dme-bench: mode must be exact or lmr");
  std::vector<DmeRun> runs;
  for (double t0 : o.t0_grid) {
    DmeConfig cfg;
    cfg.t0 = t0;
    cfg.T = o.T;
    cfg.eps_d = o.eps_d;
    cfg.mode = o.mode == "lmr" ? DmeMode::Lmr : DmeMode::Exact;
    if (o.filter_kappa > 0.0) cfg.filter_kappa = o.filter_kappa;
    runs.push_back(run_algorithm3(ps, psi, cfg));
    for (const auto& w : runs.back().warnings) err << "warning: " << w << '\n';
  }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (runs.size() >= 2) {
    RVector x, y;
    for (const auto& r : runs) {
      x.push_back(r.t0);
      y.push_back(std::max(r.qpe_residual, 1e-300));
    }
    slope = fit_loglog_slope(x, y);
  }
  Csv csv({"t0", "T", "n_copies_total", "eps_D", "residual", "qpe_residual", "exact_gap", "slope_fit"});
  for (const auto& r : runs) {
    csv.row({num(r.t0), num(r.T), num(r.ledger.count("rho_copies")), num(r.eps_d), num(r.residual),
             num(r.qpe_residual), num(r.exact_gap), num(slope)});
  }
  return csv;
}

Csv run_phases(const Options& o) {
  if (o.delta <= 0.0) throw Error("qsvt-phases: --delta is required");
  const OddPoly p = sign_poly(o.delta, o.eps);
  const PhaseSequence ph = find_phases(p);
  double recon = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = -1.0 + 2.0 * i / 100.0;
    recon = std::max(recon, std::abs(qsp_response(ph.phis, x).real() - p(x)));
  }
  const double grid = sign_error(p, o.delta);
  if (!o.phases_out.empty()) {
    std::ofstream f(o.phases_out);
    if (!f) throw Error("qsvt-phases: cannot write " + o.phases_out);
    f << p.degree << '\n';
    for (double phi : ph.phis) f << format_real(phi) << '\n';
    f << "# grid_error " << format_real(grid) << '\n';
    f << "# reconstruction_error " << format_real(recon) << '\n';
  }
  Csv csv({"delta", "eps", "degree", "grid_error", "sup_norm", "reconstruction_error", "iterations"});
  csv.row({num(o.delta), num(o.eps), num(p.degree), num(grid), num(sup_norm(p)), num(recon), num(ph.iterations)});
  return csv;
}

Csv run_selftest(const Options& o, bool& ok) {
  Rng rng(o.seed);
  Csv csv({"check", "value", "threshold", "pass"});
  ok = true;
  auto check = [&](const std::string& name, double value, double threshold) {
    const bool pass = value <= threshold;
    ok = ok && pass;
    csv.row({name, num(value), num(threshold), pass ? "1" : "0"});
  };

  {
    const std::size_t m = 9, n = 7, k = 11;
    CMatrix a(m, k), b(k, n);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.complex_normal();
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = rng.complex_normal();
    CMatrix c1(m, n), c2(m, n);
    kernels::scalar::gemm(m, n, k, a.data(), k, b.data(), n, c1.data(), n);
    if (kernels::avx2_available()) {
      kernels::avx2::gemm(m, n, k, a.data(), k, b.data(), n, c2.data(), n);
    } else {
      c2 = c1;
    }
    check("kernel_equivalence", frobenius_norm(c1 - c2), 1e-12);
  }
  {
    CMatrix a(8, 8);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.complex_normal();
    const SvdResult s = svd(a);
    CMatrix ws = s.W;
    for (std::size_t j = 0; j < s.rank; ++j)
      for (std::size_t i = 0; i < 8; ++i) ws(i, j) *= s.sigma[j];
    check("svd_reconstruction", spectral_norm(a - ws * s.V.adjoint()) / spectral_norm(a), 1e-9);
  }
  {
    const OddPoly p = sign_poly(0.3, 1e-3);
    check("sign_poly_grid_error", sign_error(p, 0.3), 1e-3);
    const PhaseSequence ph = find_phases(p);
    double recon = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 2.0 * i / 100.0;
      recon = std::max(recon, std::abs(qsp_response(ph.phis, x).real() - p(x)));
    }
    check("phase_reconstruction", recon, 1e-8);
  }
  {
    const CMatrix a = random_with_singular_values(4, {1.0, 0.6, 0.3}, rng);
    const CVector psi = state_with_row_overlap(a, 0.5, rng);
    PolarRunConfig cfg;
    cfg.eps = 1e-3;
    cfg.delta = 0.3;
    cfg.amplify = true;
    cfg.c = 0.5;
    check("polar_amplified_residual", polar_transform(direct_encoding(a), psi, cfg).residual, 1e-3);
  }
  {
    const PairSet ps = random_pairs(4, 2, rng);
    const BlockEncoding be = procrustes_encoding(ps);
    check("lcu_encoding_exactness", spectral_norm(extract_block(be) - procrustes_matrix(ps)), 1e-9);
  }
  {
    Ensemble e;
    e.p = {0.5, 0.5};
    e.states = CMatrix{{1.0, M_SQRT1_2}, {0.0, M_SQRT1_2}};
    const CVector omega{1.0, 0.0};
    check("pgm_tv_distance", tv_distance(pgm_circuit(e, omega, 1e-2).dist.probs, qpgm_oracle(e, omega).probs), 1e-2);
  }
  return csv;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical simulator for QSVT polar decomposition, pretty-good measurement and Procrustes pipelines",
               "qpolar"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value configuration file; command-line flags take precedence");
  Options o;
  app.add_option("--seed", o.seed, "Random seed (QPOLAR_SEED overrides)")->capture_default_str();
  app.add_option("--out", o.out_path, "Write the CSV report to this file instead of stdout");

  auto* polar = app.add_subcommand("polar", "Polar transform of a matrix applied to a state");
  polar->add_option("--matrix", o.matrix, "Square matrix file")->required();
  polar->add_option("--state", o.state, "State file (N x 1)")->required();
  polar->add_option("--eps", o.eps, "Target accuracy")->capture_default_str();
  polar->add_option("--delta", o.delta, "Singular value threshold (default sigma_min/alpha)");
  polar->add_option("--c", o.c, "Row-space overlap of the state (estimated if omitted)");
  polar->add_flag("--amplify", o.amplify, "Amplify onto the ancilla-zero subspace");
  polar->footer("CSV columns: dims,alpha,kappa,degree,oaa_reps,encoder_uses,residual");

  auto* pgm = app.add_subcommand("pgm", "Pretty-good measurement distribution via the polar pipeline");
  pgm->add_option("--ensemble", o.ensemble, "Directory with states.txt and probs.txt")->required();
  pgm->add_option("--omega", o.omega, "State to measure (N x 1)")->required();
  pgm->add_option("--eps", o.eps, "Target total-variation accuracy")->capture_default_str();
  pgm->add_option("--shots", o.shots, "Sample this many outcomes instead of exact probabilities");
  pgm->footer("CSV columns: r,kappa_A,eps,d_tv,uses_up,uses_uphi,petz_cost,polar_cost");

  auto* proc = app.add_subcommand("procrustes", "Procrustes isometry applied to a state");
  proc->add_option("--pairs", o.pairs, "Directory with inputs.txt and outputs.txt")->required();
  proc->add_option("--state", o.state, "Input state (N x 1)")->required();
  proc->add_option("--eps", o.eps, "Target accuracy")->capture_default_str();
  proc->add_option("--c", o.c, "Claimed lower bound on the row-space overlap (checked, not used)");
  proc->footer("CSV columns: N,r,kappa,residual,uses_cupsi,uses_cuphi,oaa_reps");

  auto* dme = app.add_subcommand("dme-bench", "Phase-estimation baseline over a grid of evolution times");
  dme->add_option("--pairs", o.pairs, "Directory with inputs.txt and outputs.txt")->required();
  dme->add_option("--state", o.state, "Input state (N x 1)")->required();
  dme->add_option("--t0-grid", o.t0_grid, "Comma-separated evolution times")->delimiter(',');
  dme->add_option("--T", o.T, "Control register size (default: smallest power of two >= 4 t0)");
  dme->add_option("--eps-d", o.eps_d, "Error budget for density matrix exponentiation")->capture_default_str();
  dme->add_option("--filter-kappa", o.filter_kappa, "Filter condition number (default 1/sigma_min)");
  dme->add_option("--mode", o.mode, "exact or lmr")->capture_default_str();
  dme->footer("CSV columns: t0,T,n_copies_total,eps_D,residual,qpe_residual,exact_gap,slope_fit");

  auto* phases = app.add_subcommand("qsvt-phases", "Sign polynomial and its phase factors");
  phases->add_option("--delta", o.delta, "Gap parameter")->required();
  phases->add_option("--eps", o.eps, "Approximation accuracy")->capture_default_str();
  phases->add_option("--out", o.phases_out, "Phase file: degree, one phase per line, error report");
  phases->footer("CSV columns: delta,eps,degree,grid_error,sup_norm,reconstruction_error,iterations");

  auto* self = app.add_subcommand("selftest", "Quick consistency checks");
  self->footer("CSV columns: check,value,threshold,pass");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  o.seed = seed_from_env(o.seed);

  try {
    std::optional<Csv> csv;
    int status = 0;
    if (*polar) {
      csv = run_polar(o);
    } else if (*pgm) {
      csv = run_pgm(o);
    } else if (*proc) {
      csv = run_procrustes(o);
    } else if (*dme) {
      csv = run_dme(o, err);
    } else if (*phases) {
      csv = run_phases(o);
    } else if (*self) {
      bool ok = false;
      csv = run_selftest(o, ok);
      status = ok ? 0 : 1;
    }
    if (o.out_path.empty()) {
      csv->write(out);
    } else {
      std::ofstream f(o.out_path);
      if (!f) throw Error("cannot write " + o.out_path);
      csv->write(f);
    }
    return status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qpolar::cli
