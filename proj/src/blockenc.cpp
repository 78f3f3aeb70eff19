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

#include "qpolar/blockenc.hpp"

#include <cmath>

namespace qpolar {

namespace {

unsigned ceil_log2(std::size_t r) {
  unsigned g = 0;
  while ((std::size_t{1} << g) < r) ++g;
  return g;
}

void require_pow2_r(std::size_t r, const char* who) {
  if (!is_pow2(r)) {
    throw Error(std::string(who) + ": number of states r = " + std::to_string(r) +
                " is not a power of two; pad the ensemble with zero-weight dummy states");
  }
}

// Operator on [g][m][n] acting as `u` on [g][n] and as identity on the middle register.
CMatrix skip_middle(const CMatrix& u, std::size_t gdim, std::size_t mdim, std::size_t ndim) {
  CMatrix out(gdim * mdim * ndim, gdim * mdim * ndim);
  for (std::size_t i = 0; i < gdim; ++i)
    for (std::size_t y = 0; y < ndim; ++y)
      for (std::size_t i2 = 0; i2 < gdim; ++i2)
        for (std::size_t y2 = 0; y2 < ndim; ++y2) {
          const cplx v = u(i * ndim + y, i2 * ndim + y2);
          if (v == cplx{}) continue;
          for (std::size_t m = 0; m < mdim; ++m)
            out((i * mdim + m) * ndim + y, (i2 * mdim + m) * ndim + y2) = v;
        }
  return out;
}

// I - 2 * I_outer (x) |0><0|_inner
CMatrix zero_reflection(std::size_t outer, std::size_t inner) {
  CMatrix w = CMatrix::identity(outer * inner);
  for (std::size_t i = 0; i < outer; ++i) w(i * inner, i * inner) = -1.0;
  return w;
}

void check_prep(const StatePrepOracle& o) {
  const std::size_t gdim = std::size_t{1} << o.g, ndim = std::size_t{1} << o.n;
  if (o.U.rows() != gdim * ndim || o.U.cols() != gdim * ndim) {
    throw Error("state-preparation oracle '" + o.name + "' has inconsistent dimensions");
  }
}

}  // namespace

StatePrepOracle make_state_prep(const CMatrix& states, const std::string& name) {
  const std::size_t N = states.rows(), r = states.cols();
  if (!is_pow2(N)) throw Error("make_state_prep: state dimension must be a power of two");
  if (r == 0) throw Error("make_state_prep: no states");
  StatePrepOracle o;
  o.g = ceil_log2(r);
  o.n = log2_exact(N);
  o.r = r;
  o.name = name;
  const std::size_t gdim = std::size_t{1} << o.g;
  o.U = CMatrix(gdim * N, gdim * N);
  for (std::size_t i = 0; i < gdim; ++i) {
    const CMatrix blk = i < r ? householder_completion(states.col(i)) : CMatrix::identity(N);
    o.U.set_block(i * N, i * N, blk);
  }
  for (std::size_t i = 0; i < r; ++i) {
    const CVector out = o.U * basis_vector(gdim * N, i * N);
    CVector expect(gdim * N, 0.0);
    for (std::size_t y = 0; y < N; ++y) expect[i * N + y] = states(y, i);
    if (l2_distance(out, expect) > 1e-10) {
      throw Error("make_state_prep: oracle check failed for state " + std::to_string(i));
    }
  }
  return o;
}

StatePrepOracle copy_oracle(unsigned g, unsigned n, const std::string& name) {
  if (g > n) throw Error("copy_oracle: index register larger than the system register");
  StatePrepOracle o;
  o.g = g;
  o.n = n;
  o.r = std::size_t{1} << g;
  o.name = name;
  const std::size_t gdim = std::size_t{1} << g, ndim = std::size_t{1} << n;
  o.U = CMatrix(gdim * ndim, gdim * ndim);
  for (std::size_t i = 0; i < gdim; ++i)
    for (std::size_t y = 0; y < ndim; ++y) o.U(i * ndim + (y ^ i), i * ndim + y) = 1.0;
  return o;
}

CMatrix amplitude_oracle(const RVector& p) {
  if (p.empty()) throw Error("amplitude_oracle: empty probability vector");
  const std::size_t dim = next_pow2(p.size());
  CVector v(dim, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0.0) throw Error("amplitude_oracle: negative probability");
    v[k] = std::sqrt(p[k]);
    total += p[k];
  }
  if (std::abs(total - 1.0) > 1e-10) throw Error("amplitude_oracle: probabilities do not sum to 1");
  return householder_completion(normalized(v));
}

CMatrix rotation_oracle(const RVector& p) {
  const std::size_t gdim = next_pow2(p.size());
  CMatrix u = CMatrix::identity(2 * gdim);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0.0 || p[k] > 1.0) throw Error("rotation_oracle: probability outside [0,1]");
    const double c = std::sqrt(p[k]), s = std::sqrt(1.0 - p[k]);
    u(2 * k, 2 * k) = c;
    u(2 * k + 1, 2 * k) = s;
    u(2 * k, 2 * k + 1) = -s;
    u(2 * k + 1, 2 * k + 1) = c;
  }
  return u;
}

CMatrix hadamard_n(unsigned k) {
  const CMatrix h1{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
  CMatrix h = CMatrix::identity(1);
  for (unsigned i = 0; i < k; ++i) h = kron(h, h1);
  return h;
}

CMatrix pauli_x() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

CMatrix controlled(const CMatrix& u) {
  const std::size_t d = u.rows();
  CMatrix c(2 * d, 2 * d);
  c.set_block(0, 0, CMatrix::identity(d));
  c.set_block(d, d, u);
  return c;
}

BlockEncoding weighted_projector_encoding(const StatePrepOracle& u_psi,
                                          const StatePrepOracle& u_phi, const CMatrix& u_p,
                                          const CMatrix& u_s, const std::string& p_name,
                                          const std::string& s_name) {
  check_prep(u_psi);
  check_prep(u_phi);
  require_pow2_r(u_phi.r, "weighted_projector_encoding");
  require_pow2_r(u_psi.r, "weighted_projector_encoding");
  if (u_psi.g != u_phi.g || u_psi.n != u_phi.n) {
    throw Error("weighted_projector_encoding: oracle registers differ");
  }
  const std::size_t gdim = std::size_t{1} << u_psi.g, ndim = std::size_t{1} << u_psi.n;
  if (u_p.rows() != gdim || u_s.rows() != gdim) {
    throw Error("weighted_projector_encoding: probability oracles must act on the index register");
  }
  const CMatrix id_n = CMatrix::identity(ndim);
  const CMatrix g1 = u_psi.U * kron(u_p, id_n);
  const CMatrix g2 = u_phi.U * kron(u_s, id_n);
  const CMatrix swap = kron(CMatrix::identity(gdim), swap_operator(ndim));

  BlockEncoding be;
  be.U = kron(g2.adjoint(), id_n) * swap * kron(g1, id_n);
  be.alpha = 1.0;
  be.a = u_psi.g + u_psi.n;
  be.n = u_psi.n;
  be.per_use.charge(u_phi.name);
  be.per_use.charge(u_psi.name);
  be.per_use.charge(s_name);
  be.per_use.charge(p_name);
  return be;
}

BlockEncoding lcu_encoding(const StatePrepOracle& u_psi, const StatePrepOracle& u_phi) {
  check_prep(u_psi);
  check_prep(u_phi);
  if (u_psi.g != u_phi.g || u_psi.n != u_phi.n || u_psi.r != u_phi.r) {
    throw Error("lcu_encoding: oracle dimensions differ");
  }
  require_pow2_r(u_psi.r, "lcu_encoding");
  const unsigned g = u_psi.g;
  const std::size_t gdim = std::size_t{1} << g, ndim = std::size_t{1} << u_psi.n;
  const CMatrix hg = kron(hadamard_n(g), CMatrix::identity(ndim));
  const CMatrix w = zero_reflection(gdim, ndim);
  const CMatrix v0 = hg * u_phi.U * u_psi.U.adjoint() * hg;
  const CMatrix v1 = hg * u_phi.U * w * u_psi.U.adjoint() * hg;

  const std::size_t d = gdim * ndim;
  CMatrix cv(2 * d, 2 * d);
  cv.set_block(0, 0, v0);
  cv.set_block(d, d, v1);
  const CMatrix id = CMatrix::identity(d);
  const CMatrix h1 = hadamard_n(1);

  BlockEncoding be;
  be.U = kron(pauli_x() * h1, id) * cv * kron(h1, id);
  be.alpha = static_cast<double>(u_psi.r);
  be.a = g + 1;
  be.n = u_psi.n;
  be.per_use.charge("c" + u_psi.name, 2);
  be.per_use.charge("c" + u_phi.name, 2);
  return be;
}

BlockEncoding rotation_encoding(const StatePrepOracle& u_phi, const CMatrix& u_p_rot) {
  check_prep(u_phi);
  require_pow2_r(u_phi.r, "rotation_encoding");
  const unsigned g = u_phi.g, n = u_phi.n;
  const std::size_t gdim = std::size_t{1} << g, ndim = std::size_t{1} << n;
  if (u_p_rot.rows() != 2 * gdim) {
    throw Error("rotation_encoding: rotation oracle must act on the index register plus one qubit");
  }
  const StatePrepOracle cp = copy_oracle(g, n);
  const CMatrix id_n = CMatrix::identity(ndim);
  const CMatrix hg = kron(hadamard_n(g), CMatrix::identity(2 * ndim));
  const CMatrix phi3 = skip_middle(u_phi.U, gdim, 2, ndim);
  const CMatrix copy3 = skip_middle(cp.U, gdim, 2, ndim);
  const CMatrix prot3 = kron(u_p_rot, id_n);
  const CMatrix refl = zero_reflection(gdim, 2 * ndim);
  const CMatrix tail = prot3.adjoint() * phi3.adjoint() * hg;
  const CMatrix v0 = hg * copy3 * tail;
  const CMatrix v1 = hg * copy3 * refl * tail;

  const std::size_t d = gdim * 2 * ndim;
  CMatrix cv(2 * d, 2 * d);
  cv.set_block(0, 0, v0);
  cv.set_block(d, d, v1);
  const CMatrix id = CMatrix::identity(d);
  const CMatrix h1 = hadamard_n(1);

  BlockEncoding be;
  be.U = kron(pauli_x() * h1, id) * cv * kron(h1, id);
  be.alpha = static_cast<double>(u_phi.r);
  be.a = g + 2;
  be.n = n;
  be.per_use.charge("c" + u_phi.name, 2);
  be.per_use.charge("cu_p_rot", 2);
  be.per_use.charge("c" + cp.name, 2);
  return be;
}

BlockEncoding direct_encoding(const CMatrix& a, double alpha, const std::string& name) {
  if (a.rows() != a.cols()) throw Error("direct_encoding: matrix must be square (pad it first)");
  if (!(alpha > 0.0)) throw Error("direct_encoding: alpha must be positive");
  const std::size_t N = next_pow2(a.rows());
  const CMatrix b = pad(a, N, N) * cplx{1.0 / alpha};
  const double nb = spectral_norm(b);
  if (nb > 1.0 + 1e-12) {
    throw Error("direct_encoding: ||A||/alpha = " + format_real(nb) + " exceeds 1");
  }
  // Both defect blocks come from one SVD, b = W S V^dagger:
  //   sqrt(I - b b^dagger) = W sqrt(1 - S^2) W^dagger + (I - W W^dagger), likewise with V,
  // so the off-diagonal terms of U^dagger U cancel exactly even when S touches 1.
  const CMatrix id = CMatrix::identity(N);
  auto defect = [&](const CMatrix& basis, const RVector& sigma) {
    CMatrix out = id;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const double s = std::min(sigma[k], 1.0);
      const CVector u = basis.col(k);
      out += outer(u, u) * cplx{std::sqrt((1.0 - s) * (1.0 + s)) - 1.0};
    }
    return out;
  };
  CMatrix left = id, right = id;
  if (nb > 0.0) {
    const SvdResult sv = svd(b);
    left = defect(sv.W, sv.sigma);
    right = defect(sv.V, sv.sigma);
  }
  BlockEncoding be;
  be.U = CMatrix(2 * N, 2 * N);
  be.U.set_block(0, 0, b);
  be.U.set_block(0, N, left);
  be.U.set_block(N, 0, right);
  be.U.set_block(N, N, b.adjoint() * cplx{-1.0});
  be.alpha = alpha;
  be.a = 1;
  be.n = log2_exact(N);
  be.per_use.charge(name);
  return be;
}

CMatrix extract_block(const BlockEncoding& be) {
  const std::size_t d = be.system_dim();
  if (be.U.rows() != (std::size_t{1} << (be.a + be.n))) {
    throw Error("extract_block: unitary size does not match a + n qubits");
  }
  return be.U.block(0, 0, d, d) * cplx{be.alpha};
}

bool verify_encoding(const BlockEncoding& be, const CMatrix& a, double delta) {
  const CMatrix blk = extract_block(be);
  if (blk.rows() != a.rows() || blk.cols() != a.cols()) return false;
  return spectral_norm(a - blk) <= delta;
}

}  // namespace qpolar
