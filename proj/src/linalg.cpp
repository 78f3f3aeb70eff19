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

#include "qpolar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qpolar/kernels.hpp"

namespace qpolar {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(what);
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(std::string(op) + ": dimension mismatch (" + std::to_string(a.rows()) + "x" +
                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                std::to_string(b.cols()) + ")");
  }
}

}  // namespace

// ---- CMatrix -------------------------------------------------------------------

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(const CVector& d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::diag(const RVector& d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::column(const CVector& v) {
  CMatrix m(v.size(), 1);
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::conj() const {
  CMatrix t(*this);
  for (auto& z : t.data_) z = std::conj(z);
  return t;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, "CMatrix::block: out of range");
  CMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                b.data() + i * nc);
  return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
  require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "CMatrix::set_block: out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    std::copy_n(b.data() + i * b.cols(), b.cols(), data_.data() + (r0 + i) * cols_ + c0);
}

CVector CMatrix::col(std::size_t j) const {
  CVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void CMatrix::set_col(std::size_t j, const CVector& v) {
  require(v.size() == rows_, "CMatrix::set_col: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool CMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error("matrix product: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                std::to_string(b.rows()) + ")");
  }
  CMatrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), b.cols(), a.cols(), a.data(), a.cols(), b.data(), b.cols(), c.data(),
                c.cols());
  return c;
}

CVector operator*(const CMatrix& a, const CVector& x) {
  require(a.cols() == x.size(), "matrix-vector product: dimension mismatch");
  CVector y(a.rows());
  kernels::gemv(a.rows(), a.cols(), a.data(), a.cols(), x.data(), y.data());
  return y;
}

// ---- vectors ---------------------------------------------------------------------

double norm2(const CVector& v) {
  return std::sqrt(kernels::dotc(v.size(), v.data(), v.data()).real());
}

CVector normalized(const CVector& v) {
  const double n = norm2(v);
  require(n > 0.0, "normalized: zero vector");
  CVector out(v);
  for (auto& z : out) z /= n;
  return out;
}

cplx inner(const CVector& x, const CVector& y) {
  require(x.size() == y.size(), "inner: dimension mismatch");
  return kernels::dotc(x.size(), x.data(), y.data());
}

CVector operator+(CVector a, const CVector& b) {
  require(a.size() == b.size(), "vector +: dimension mismatch");
  kernels::axpy(a.size(), 1.0, b.data(), a.data());
  return a;
}

CVector operator-(CVector a, const CVector& b) {
  require(a.size() == b.size(), "vector -: dimension mismatch");
  kernels::axpy(a.size(), -1.0, b.data(), a.data());
  return a;
}

CVector operator*(cplx s, CVector a) {
  for (auto& z : a) z *= s;
  return a;
}

CMatrix outer(const CVector& a, const CVector& b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

CVector basis_vector(std::size_t dim, std::size_t k) {
  require(k < dim, "basis_vector: index out of range");
  CVector v(dim, 0.0);
  v[k] = 1.0;
  return v;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

// ---- structure -------------------------------------------------------------------

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

CMatrix kron_all(std::initializer_list<CMatrix> factors) {
  require(factors.size() > 0, "kron_all: no factors");
  auto it = factors.begin();
  CMatrix out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

CMatrix partial_trace_right(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
    throw Error("partial_trace_right: dimension mismatch");
  }
  CMatrix out(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < dim_b; ++k) s += rho(i * dim_b + k, j * dim_b + k);
      out(i, j) = s;
    }
  return out;
}

CMatrix partial_trace_left(const CMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
    throw Error("partial_trace_left: dimension mismatch");
  }
  CMatrix out(dim_b, dim_b);
  for (std::size_t k = 0; k < dim_a; ++k)
    for (std::size_t i = 0; i < dim_b; ++i)
      for (std::size_t j = 0; j < dim_b; ++j) out(i, j) += rho(k * dim_b + i, k * dim_b + j);
  return out;
}

CMatrix apply_channel(const CMatrix& u, const CMatrix& sigma) {
  if (u.cols() != sigma.rows() || sigma.rows() != sigma.cols()) {
    throw Error("apply_channel: dimension mismatch");
  }
  return u * sigma * u.adjoint();
}

CMatrix swap_operator(std::size_t dim) {
  CMatrix s(dim * dim, dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) s(j * dim + i, i * dim + j) = 1.0;
  return s;
}

CMatrix pad(const CMatrix& a, std::size_t rows, std::size_t cols) {
  require(rows >= a.rows() && cols >= a.cols(), "pad: target smaller than input");
  CMatrix out(rows, cols);
  out.set_block(0, 0, a);
  return out;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(std::size_t n) {
  require(is_pow2(n), "log2_exact: not a power of two");
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// ---- SVD -----------------------------------------------------------------------------

SvdResult svd(const CMatrix& a) {
  require(a.rows() > 0 && a.cols() > 0, "svd: empty matrix");
  require(a.is_finite(), "svd: non-finite entries");
  const std::size_t m = a.rows(), n = a.cols();

  // Columns are stored contiguously: row j of `cols` is column j of A.
  CMatrix cols = a.transpose();
  CMatrix vt = CMatrix::identity(n);  // row j of vt is column j of V
  const double fro = frobenius_norm(a);
  const double floor2 = (1e-12 * fro) * (1e-12 * fro);

  auto col_ptr = [&](CMatrix& mat, std::size_t j) { return mat.data() + j * mat.cols(); };

  bool converged = (fro == 0.0);
  double worst = 0.0;
  for (int sweep = 0; sweep < kJacobiSweepCap && !converged; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        cplx* ap = col_ptr(cols, p);
        cplx* aq = col_ptr(cols, q);
        const double alpha = kernels::dotc(m, ap, ap).real();
        const double beta = kernels::dotc(m, aq, aq).real();
        const cplx gamma = kernels::dotc(m, ap, aq);
        const double g = std::abs(gamma);
        if (std::min(alpha, beta) <= floor2) continue;
        const double rel = g / std::sqrt(alpha * beta);
        worst = std::max(worst, rel);
        if (rel <= 1e-15) continue;
        rotated = true;
        const cplx ph = gamma / g;  // e^{i theta}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const cplx e = std::conj(ph);  // e^{-i theta}
        auto rotate = [&](cplx* xp, cplx* xq, std::size_t len) {
          for (std::size_t k = 0; k < len; ++k) {
            const cplx u = xp[k];
            const cplx w = e * xq[k];
            xp[k] = c * u - s * w;
            xq[k] = s * u + c * w;
          }
        };
        rotate(ap, aq, m);
        rotate(col_ptr(vt, p), col_ptr(vt, q), n);
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw ConvergenceError("svd: Jacobi iteration did not converge in " +
                               std::to_string(kJacobiSweepCap) +
                               " sweeps (max relative off-diagonal " + std::to_string(worst) + ")",
                           worst);
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx* cj = col_ptr(cols, j);
    norms[j] = std::sqrt(kernels::dotc(m, cj, cj).real());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult res;
  const std::size_t kmin = std::min(m, n);
  res.all_sigma.resize(kmin);
  for (std::size_t i = 0; i < kmin; ++i) res.all_sigma[i] = norms[order[i]];
  const double smax = norms[order[0]];
  std::size_t rank = 0;
  while (rank < kmin && norms[order[rank]] > kRankTol * smax && smax > 0.0) ++rank;
  res.rank = rank;
  res.sigma.assign(res.all_sigma.begin(), res.all_sigma.begin() + static_cast<std::ptrdiff_t>(rank));
  res.W = CMatrix(m, rank);
  res.V = CMatrix(n, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const std::size_t j = order[i];
    const cplx* cj = col_ptr(cols, j);
    const cplx* vj = col_ptr(vt, j);
    for (std::size_t k = 0; k < m; ++k) res.W(k, i) = cj[k] / norms[j];
    for (std::size_t k = 0; k < n; ++k) res.V(k, i) = vj[k];
  }
  return res;
}

// ---- Hermitian eigensolver ---------------------------------------------------------

EighResult eigh(const CMatrix& h_in) {
  require(h_in.rows() == h_in.cols(), "eigh: matrix not square");
  require(h_in.is_finite(), "eigh: non-finite entries");
  const std::size_t n = h_in.rows();
  const double scale = std::max(frobenius_norm(h_in), 1e-300);
  if (!is_hermitian(h_in, 1e-8 * scale)) throw Error("eigh: matrix not Hermitian");

  CMatrix h = h_in;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
  CMatrix v = CMatrix::identity(n);

  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(h(i, j));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  for (; sweep < kJacobiSweepCap && off() > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx hpq = h(p, q);
        const double g = std::abs(hpq);
        if (g <= 1e-300) continue;
        const double a = h(p, p).real(), b = h(q, q).real();
        const cplx e = std::conj(hpq / g);  // e^{-i theta}
        const double zeta = (b - a) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // G restricted to (p,q): [[c, s], [-s e, c e]].
        const cplx g_pp = c, g_pq = s, g_qp = -s * e, g_qq = c * e;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx xp = h(k, p), xq = h(k, q);
          h(k, p) = g_pp * xp + g_qp * xq;
          h(k, q) = g_pq * xp + g_qq * xq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx xp = h(p, k), xq = h(q, k);
          h(p, k) = std::conj(g_pp) * xp + std::conj(g_qp) * xq;
          h(q, k) = std::conj(g_pq) * xp + std::conj(g_qq) * xq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx xp = v(k, p), xq = v(k, q);
          v(k, p) = g_pp * xp + g_qp * xq;
          v(k, q) = g_pq * xp + g_qq * xq;
        }
      }
    }
  }
  if (off() > 1e-15 * scale * 10) {
    throw ConvergenceError("eigh: Jacobi iteration did not converge", off() / scale);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return h(x, x).real() < h(y, y).real(); });
  EighResult res;
  res.values.resize(n);
  res.vectors = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    res.values[i] = h(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) res.vectors(k, i) = v(k, order[i]);
  }
  return res;
}

CMatrix hermitian_function(const CMatrix& h, const std::function<cplx(double)>& f) {
  const EighResult e = eigh(h);
  const std::size_t n = h.rows();
  CMatrix scaled = e.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx fj = f(e.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return scaled * e.vectors.adjoint();
}

CMatrix expi_hermitian(const CMatrix& h, double t) {
  return hermitian_function(h, [t](double x) { return std::polar(1.0, x * t); });
}

PolarFactors polar_oracle(const CMatrix& a) {
  require(a.rows() == a.cols(), "polar_oracle: matrix must be square (pad it first)");
  const SvdResult s = svd(a);
  PolarFactors out;
  out.U = s.W * s.V.adjoint();
  CMatrix vs = s.V;
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= s.sigma[j];
  out.B = vs * s.V.adjoint();
  if (s.rank == 0) {
    out.U = CMatrix(a.rows(), a.cols());
    out.B = CMatrix(a.rows(), a.cols());
  }
  return out;
}

CMatrix pinv_sqrt(const CMatrix& rho) {
  const EighResult e = eigh(rho);
  const double top = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  if (e.values.front() < -1e-8) {
    throw Error("pinv_sqrt: matrix has a negative eigenvalue " + format_real(e.values.front()));
  }
  const double cut = kRankTol * top;
  const std::size_t n = rho.rows();
  CMatrix scaled = e.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const double lam = e.values[j];
    const double f = lam > cut ? 1.0 / std::sqrt(lam) : 0.0;
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
  }
  return scaled * e.vectors.adjoint();
}

CMatrix sqrt_psd(const CMatrix& m) {
  const EighResult e = eigh(m);
  if (e.values.front() < -1e-8) {
    throw Error("sqrt_psd: matrix has a negative eigenvalue " + format_real(e.values.front()));
  }
  const std::size_t n = m.rows();
  CMatrix scaled = e.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const double f = std::sqrt(std::max(e.values[j], 0.0));
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
  }
  return scaled * e.vectors.adjoint();
}

QrResult qr(const CMatrix& a) {
  require(a.rows() == a.cols(), "qr: matrix must be square");
  const std::size_t n = a.rows();
  CMatrix r = a;
  CMatrix q = CMatrix::identity(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) xnorm2 += std::norm(r(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const cplx x0 = r(k, k);
    const cplx ph = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx{1.0, 0.0};
    CVector v(n - k);
    for (std::size_t i = k; i < n; ++i) v[i - k] = r(i, k);
    v[0] += ph * xnorm;
    const double vn = norm2(v);
    if (vn == 0.0) continue;
    for (auto& z : v) z /= vn;
    // r <- (I - 2 v v^dagger) r on rows k..n-1
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += std::conj(v[i - k]) * r(i, j);
      for (std::size_t i = k; i < n; ++i) r(i, j) -= 2.0 * v[i - k] * s;
    }
    // q <- q (I - 2 v v^dagger) on columns k..n-1
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j - k];
      for (std::size_t j = k; j < n; ++j) q(i, j) -= 2.0 * s * std::conj(v[j - k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) == 0.0) continue;
    const cplx ph = d / std::abs(d);
    for (std::size_t i = 0; i < n; ++i) q(i, k) *= ph;
    for (std::size_t j = 0; j < n; ++j) r(k, j) *= std::conj(ph);
    r(k, k) = r(k, k).real();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) r(i, j) = 0.0;
  return {std::move(q), std::move(r)};
}

CMatrix householder_completion(const CVector& v) {
  require(!v.empty(), "householder_completion: empty vector");
  if (std::abs(norm2(v) - 1.0) > 1e-10) throw Error("householder_completion: vector not normalized");
  const std::size_t n = v.size();
  const cplx eth = std::abs(v[0]) > 0 ? v[0] / std::abs(v[0]) : cplx{1.0, 0.0};
  CVector u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = -std::conj(eth) * v[i];
  u[0] += 1.0;
  const double un = norm2(u);
  CMatrix q = CMatrix::identity(n);
  if (un > 1e-14) {
    for (auto& z : u) z /= un;
    q -= 2.0 * outer(u, u);
  }
  q *= eth;
  return q;
}

RVector solve_real(std::vector<double> a, RVector b) {
  const std::size_t n = b.size();
  require(a.size() == n * n, "solve_real: dimension mismatch");
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    if (a[p * n + k] == 0.0) throw Error("solve_real: singular system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(b[k], b[p]);
    }
    const double d = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / d;
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  RVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

CMatrix column_projector(const CMatrix& q) { return q * q.adjoint(); }

// ---- metrics ---------------------------------------------------------------------------

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.storage()) s += std::norm(z);
  return std::sqrt(s);
}

double spectral_norm(const CMatrix& a) {
  if (frobenius_norm(a) == 0.0) return 0.0;
  return svd(a).all_sigma.front();
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
  require_same_shape(rho, sigma, "trace_distance");
  CMatrix d = rho - sigma;
  // Symmetrize to absorb round-off before the Hermitian solve.
  d = 0.5 * (d + d.adjoint());
  const EighResult e = eigh(d);
  double s = 0.0;
  for (double x : e.values) s += std::abs(x);
  return 0.5 * s;
}

double tv_distance(const RVector& p, const RVector& q) {
  require(p.size() == q.size(), "tv_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double l2_distance(const CVector& x, const CVector& y) {
  require(x.size() == y.size(), "l2_distance: length mismatch");
  return norm2(x - y);
}

double kappa(const CMatrix& a) {
  const SvdResult s = svd(a);
  if (s.rank == 0) throw Error("kappa: zero matrix has no condition number");
  return 1.0 / s.sigma.back();
}

double unitarity_defect(const CMatrix& u) {
  return spectral_norm(u.adjoint() * u - CMatrix::identity(u.cols()));
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

bool is_density_matrix(const CMatrix& rho, double tol) {
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  return eigh(rho).values.front() >= -tol;
}

bool is_normalized(const CVector& v, double tol) { return std::abs(norm2(v) - 1.0) <= tol; }

double fit_loglog_slope(const RVector& x, const RVector& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_loglog_slope: need two or more points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "fit_loglog_slope: values must be positive");
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  require(sxx > 0.0, "fit_loglog_slope: x values are all equal");
  return sxy / sxx;
}

// ---- text I/O ------------------------------------------------------------------------

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix(std::ostream& os, const CMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_real(m(i, j).real()) << ' ' << format_real(m(i, j).imag());
    }
    os << '\n';
  }
}

namespace {

double parse_real(const std::string& tok, const char* what) {
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(x)) {
    throw Error(std::string(what) + ": malformed number '" + tok + "'");
  }
  return x;
}

}  // namespace

CMatrix read_matrix(std::istream& is) {
  long long rows = -1, cols = -1;
  if (!(is >> rows >> cols) || rows <= 0 || cols <= 0) {
    throw Error("read_matrix: header must be 'rows cols' with positive counts");
  }
  CMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::string re, im;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!(is >> re >> im)) throw Error("read_matrix: fewer entries than the header declares");
      m(i, j) = {parse_real(re, "read_matrix"), parse_real(im, "read_matrix")};
    }
  std::string extra;
  if (is >> extra) throw Error("read_matrix: trailing data after the declared entries");
  return m;
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_matrix(os, m);
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  try {
    return read_matrix(is);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

RVector read_real_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  RVector out;
  std::string tok;
  while (is >> tok) out.push_back(parse_real(tok, path.c_str()));
  if (out.empty()) throw Error(path + ": no values");
  return out;
}

}  // namespace qpolar
