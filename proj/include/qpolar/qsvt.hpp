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

#include <functional>

#include "qpolar/blockenc.hpp"
#include "qpolar/ledger.hpp"
#include "qpolar/linalg.hpp"

namespace qpolar {

inline constexpr int kMaxDegree = 1001;

/// Odd real polynomial in the Chebyshev basis (even coefficients are zero).
struct OddPoly {
  RVector coeffs;  // size degree + 1
  int degree = 0;
  double delta = 0.0;
  double eps = 0.0;

  double operator()(double x) const;
};

/// Odd approximation of sign(x): Chebyshev truncation of erf(kx), rescaled so
/// that |P| <= 1 on [-1,1] and |P - sign| <= eps on delta <= |x| <= 1.
OddPoly sign_poly(double delta, double eps);

/// gamma * p, for amplitude control before amplification.
OddPoly scaled(const OddPoly& p, double gamma);

/// T_d for odd d.
OddPoly chebyshev_poly(int d);

/// Largest |P(x) - sign(x)| on a grid over delta <= |x| <= 1.
double sign_error(const OddPoly& p, double delta, std::size_t points = 5000);
/// Largest |P(x)| on a uniform grid over [-1, 1].
double sup_norm(const OddPoly& p, std::size_t points = 10001);

/// Phase factors in the reflection convention: the top-left entry of
/// prod_j e^{i phi_j Z} R(x), R(x) = [[x, sqrt(1-x^2)], [sqrt(1-x^2), -x]],
/// has real part P(x).
struct PhaseSequence {
  RVector phis;        // length = degree
  RVector wx_phases;   // symmetric W_x-convention phases, length degree + 1
  double residual = 0.0;
  int iterations = 0;
};

PhaseSequence find_phases(const OddPoly& p);

/// <0| prod_j e^{i phi_j Z} R(x) |0>
cplx qsp_response(const RVector& phis, double x);

/// Orthogonal projector given by an orthonormal basis of its image, with a
/// fast path for |0^a><0^a| (x) I.
class Projector {
 public:
  static Projector ancilla_zero(unsigned a, unsigned n);
  static Projector from_basis(const CMatrix& q);  // columns orthonormal
  static Projector from_state(const CVector& v);

  std::size_t dim() const { return dim_; }
  CVector apply(const CVector& x) const;
  CMatrix matrix() const;

 private:
  std::size_t dim_ = 0;
  std::size_t zero_block_ = 0;  // > 0 for the ancilla-zero form
  CMatrix basis_;
};

struct ProjectorPair {
  Projector pi;        // input side
  Projector pi_tilde;  // output side
};

ProjectorPair standard_projectors(const BlockEncoding& be);

/// The alternating phase sequence U_Phi with one extra qubit b (most
/// significant) that takes the real part of the QSP polynomial:
///   (H_b (x) I) diag(U_Phi(phi), U_Phi(-phi)) (H_b (x) I).
/// Each application consumes `degree` uses of U or U^dagger.
class PhaseCircuit {
 public:
  PhaseCircuit(const BlockEncoding& be, PhaseSequence phases, ProjectorPair pp);

  std::size_t dim() const { return 2 * be_.dim(); }
  std::size_t degree() const { return phases_.phis.size(); }
  const BlockEncoding& encoding() const { return be_; }

  CVector apply(const CVector& x, QueryLedger* ledger = nullptr) const;
  CVector apply_adjoint(const CVector& x, QueryLedger* ledger = nullptr) const;
  CMatrix matrix(QueryLedger* ledger = nullptr) const;

 private:
  void phase(CVector& x, double phi, const Projector& p, bool adjoint) const;
  BlockEncoding be_;
  CMatrix u_adj_;
  PhaseSequence phases_;
  ProjectorPair pp_;
};

/// Dense U_Phi; ledger is charged `degree` encoder applications.
CMatrix build_UPhi(const BlockEncoding& be, const PhaseSequence& phases, const ProjectorPair& pp,
                   QueryLedger* ledger = nullptr);

/// sum_j P(sigma_j)|w_j><v_j| over the SVD of the projected block A/alpha.
CMatrix exact_svt_oracle(const BlockEncoding& be, const OddPoly& p);

/// (-U R_Pi U^dagger R_PiTilde)^k U with n_reps = 2k + 1 and R_X = I - 2X.
/// Projectors act on the full space of U.
CMatrix oaa(const CMatrix& u, const Projector& pi, const Projector& pi_tilde, int n_reps);

/// Matrix-free form of oaa.
using LinearMap = std::function<CVector(const CVector&)>;
CVector oaa_apply(const LinearMap& u, const LinearMap& u_adj, const Projector& pi,
                  const Projector& pi_tilde, int n_reps, const CVector& x);

}  // namespace qpolar
