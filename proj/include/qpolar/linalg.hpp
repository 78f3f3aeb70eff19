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

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpolar {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diag(const CVector& d);
  static CMatrix diag(const RVector& d);
  static CMatrix column(const CVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  const std::vector<cplx>& storage() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);
  CVector col(std::size_t j) const;
  void set_col(std::size_t j, const CVector& v);
  cplx trace() const;
  bool is_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(cplx s, CMatrix a);
CVector operator*(const CMatrix& a, const CVector& x);

// ---- vectors ---------------------------------------------------------------

double norm2(const CVector& v);
CVector normalized(const CVector& v);
cplx inner(const CVector& x, const CVector& y);  // <x|y>
CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(cplx s, CVector a);
CMatrix outer(const CVector& a, const CVector& b);  // |a><b|
CVector basis_vector(std::size_t dim, std::size_t k);
CVector kron(const CVector& a, const CVector& b);

// ---- structure -------------------------------------------------------------

/// Tensor product A (x) B. The left factor is the more significant index.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron_all(std::initializer_list<CMatrix> factors);

/// Trace out the right (dim_b) factor of an operator on C^{dim_a} (x) C^{dim_b}.
CMatrix partial_trace_right(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b);
/// Trace out the left (dim_a) factor.
CMatrix partial_trace_left(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b);

/// U sigma U^dagger.
CMatrix apply_channel(const CMatrix& u, const CMatrix& sigma);

/// Operator that swaps two equal-size registers: |i>|j> -> |j>|i>.
CMatrix swap_operator(std::size_t dim);

/// Zero-pad to a rows x cols matrix (top-left placement).
CMatrix pad(const CMatrix& a, std::size_t rows, std::size_t cols);
std::size_t next_pow2(std::size_t n);
bool is_pow2(std::size_t n);
unsigned log2_exact(std::size_t n);

// ---- decompositions ----------------------------------------------------------

struct SvdResult {
  CMatrix W;      // m x rank, orthonormal columns
  RVector sigma;  // rank entries, descending, all above the rank cutoff
  CMatrix V;      // n x rank, orthonormal columns
  std::size_t rank = 0;
  RVector all_sigma;  // every computed singular value, descending (min(m,n) entries)
};

/// Failure of an iterative decomposition to converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

inline constexpr double kRankTol = 1e-9;  // relative to sigma_max
inline constexpr int kJacobiSweepCap = 100;

/// One-sided Jacobi SVD with complex Givens rotations.
SvdResult svd(const CMatrix& a);

struct EighResult {
  RVector values;  // ascending
  CMatrix vectors;  // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
EighResult eigh(const CMatrix& h);

/// f(H) for Hermitian H through its eigendecomposition.
CMatrix hermitian_function(const CMatrix& h, const std::function<cplx(double)>& f);

/// exp(i * t * H) for Hermitian H.
CMatrix expi_hermitian(const CMatrix& h, double t);

struct PolarFactors {
  CMatrix U;  // W V^dagger on the rank-r factors
  CMatrix B;  // V Sigma V^dagger
};

PolarFactors polar_oracle(const CMatrix& a);

/// rho^{-1/2} on the support of a PSD matrix, zero on its kernel.
CMatrix pinv_sqrt(const CMatrix& rho);

/// Square root of a PSD matrix; eigenvalues in [-1e-8, 0) are clamped.
CMatrix sqrt_psd(const CMatrix& m);

struct QrResult {
  CMatrix Q;
  CMatrix R;
};

/// Householder QR of a square matrix, with diag(R) made real and nonnegative.
QrResult qr(const CMatrix& a);

/// Unitary whose first column is the unit vector v (Householder completion).
CMatrix householder_completion(const CVector& v);

/// Solve a dense real system with partial pivoting; a is n x n row-major.
RVector solve_real(std::vector<double> a, RVector b);

/// Projector onto the span of the columns of Q (assumed orthonormal).
CMatrix column_projector(const CMatrix& q);

// ---- metrics -----------------------------------------------------------------

double frobenius_norm(const CMatrix& a);
double spectral_norm(const CMatrix& a);
double trace_distance(const CMatrix& rho, const CMatrix& sigma);
double tv_distance(const RVector& p, const RVector& q);
double l2_distance(const CVector& x, const CVector& y);
/// 1 / sigma_min over the nonzero singular values.
double kappa(const CMatrix& a);
double unitarity_defect(const CMatrix& u);  // || U^dagger U - I ||
bool is_hermitian(const CMatrix& a, double tol);
bool is_density_matrix(const CMatrix& rho, double tol = 1e-10);
bool is_normalized(const CVector& v, double tol = 1e-10);

/// Least-squares slope of log y against log x.
double fit_loglog_slope(const RVector& x, const RVector& y);

// ---- text I/O ------------------------------------------------------------------

/// Shortest-round-trip-safe rendering with 17 significant digits.
std::string format_real(double x);
void write_matrix(std::ostream& os, const CMatrix& m);
CMatrix read_matrix(std::istream& is);
void write_matrix_file(const std::string& path, const CMatrix& m);
CMatrix read_matrix_file(const std::string& path);
RVector read_real_file(const std::string& path);

}  // namespace qpolar
