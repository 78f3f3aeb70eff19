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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "qpolar/kernels.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/rng.hpp"

using namespace qpolar;
using qpolar::testing::random_matrix;

TEST_SUITE("linalg") {
  TEST_CASE("svd reconstructs and orders singular values") {
    Rng rng(1);
    for (auto [m, n] : {std::pair{5u, 5u}, {6u, 3u}, {3u, 7u}}) {
      const CMatrix a = random_matrix(m, n, rng);
      const SvdResult s = svd(a);
      CHECK(s.rank == std::min(m, n));
      for (std::size_t i = 1; i < s.rank; ++i) CHECK(s.sigma[i - 1] >= s.sigma[i]);
      CMatrix ws = s.W;
      for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < ws.rows(); ++i) ws(i, j) *= s.sigma[j];
      CHECK(frobenius_norm(a - ws * s.V.adjoint()) <= 1e-12 * frobenius_norm(a));
      CHECK(unitarity_defect(s.W) <= 1e-12);
      CHECK(unitarity_defect(s.V) <= 1e-12);
    }
  }

  TEST_CASE("svd of a diagonal matrix and rank detection") {
    const CMatrix d = CMatrix::diag(RVector{0.5, 3.0, 0.0, 1.0});
    const SvdResult s = svd(d);
    CHECK(s.rank == 3);
    CHECK(s.sigma[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.sigma[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.sigma[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kappa(d) == doctest::Approx(2.0).epsilon(1e-12));  // 1 / sigma_min
  }

  TEST_CASE("eigh of Pauli X and of a random Hermitian matrix") {
    const EighResult e = eigh(CMatrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
    Rng rng(2);
    const CMatrix g = random_matrix(6, 6, rng);
    const CMatrix h = g + g.adjoint();
    const EighResult r = eigh(h);
    const CMatrix rebuilt = r.vectors * CMatrix::diag(r.values) * r.vectors.adjoint();
    CHECK(frobenius_norm(h - rebuilt) <= 1e-12 * frobenius_norm(h));
  }

  TEST_CASE("polar factor matches the Newton-Schulz iteration") {
    Rng rng(3);
    const CMatrix a = random_with_singular_values(5, {1.0, 0.7, 0.4, 0.2}, rng);
    const PolarFactors pf = polar_oracle(a);
    CHECK(frobenius_norm(pf.U - testing::newton_schulz_polar(a)) <= 1e-10);
    CHECK(frobenius_norm(pf.U * pf.B - a) <= 1e-12);
  }

  TEST_CASE("qr gives a unitary and an upper triangle with nonnegative real diagonal") {
    Rng rng(4);
    const CMatrix a = random_matrix(5, 5, rng);
    const QrResult q = qr(a);
    CHECK(unitarity_defect(q.Q) <= 1e-12);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(q.R(i, i).imag() == doctest::Approx(0.0));
      CHECK(q.R(i, i).real() >= 0.0);
      for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(q.R(i, j)) <= 1e-13);
    }
    CHECK(frobenius_norm(q.Q * q.R - a) <= 1e-12);
  }

  TEST_CASE("kron puts the left factor in the most significant position") {
    const CVector v = kron(basis_vector(2, 1), basis_vector(4, 2));
    CHECK(v[1 * 4 + 2] == cplx{1.0});
    Rng rng(5);
    const CMatrix a = random_matrix(2, 2, rng);
    const CMatrix b = random_matrix(3, 3, rng);
    const CMatrix k = kron(a, b);
    CHECK(std::abs(k(1 * 3 + 2, 0 * 3 + 1) - a(1, 0) * b(2, 1)) <= 1e-15);
  }

  TEST_CASE("partial traces of a product state") {
    Rng rng(6);
    const CVector x = random_state(2, rng), y = random_state(3, rng);
    const CMatrix rho = outer(kron(x, y), kron(x, y));
    CHECK(frobenius_norm(partial_trace_right(rho, 2, 3) - outer(x, x)) <= 1e-14);
    CHECK(frobenius_norm(partial_trace_left(rho, 2, 3) - outer(y, y)) <= 1e-14);
  }

  TEST_CASE("swap operator exchanges registers") {
    Rng rng(7);
    const CVector x = random_state(3, rng), y = random_state(3, rng);
    CHECK(l2_distance(swap_operator(3) * kron(x, y), kron(y, x)) <= 1e-15);
  }

  TEST_CASE("trace distance and total variation") {
    const CMatrix p0{{1.0, 0.0}, {0.0, 0.0}}, p1{{0.0, 0.0}, {0.0, 1.0}};
    CHECK(trace_distance(p0, p1) == doctest::Approx(1.0));
    CHECK(trace_distance(p0, p0) == doctest::Approx(0.0));
    CHECK(tv_distance({0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}) == doctest::Approx(0.5));
  }

  TEST_CASE("matrix functions") {
    const CMatrix z{{1.0, 0.0}, {0.0, -1.0}};
    const CMatrix u = expi_hermitian(z, 0.3);
    CHECK(std::abs(u(0, 0) - std::polar(1.0, 0.3)) <= 1e-15);
    CHECK(std::abs(u(1, 1) - std::polar(1.0, -0.3)) <= 1e-15);
    const CMatrix rho{{0.75, 0.25}, {0.25, 0.25}};
    CHECK(frobenius_norm(sqrt_psd(rho) - testing::sqrt_2x2(rho)) <= 1e-13);
    CHECK(frobenius_norm(pinv_sqrt(rho) - testing::inverse_2x2(testing::sqrt_2x2(rho))) <= 1e-12);
  }

  TEST_CASE("householder completion and padding") {
    Rng rng(8);
    const CVector v = random_state(4, rng);
    const CMatrix h = householder_completion(v);
    CHECK(unitarity_defect(h) <= 1e-13);
    CHECK(l2_distance(h.col(0), v) <= 1e-14);
    CHECK(next_pow2(5) == 8);
    CHECK(next_pow2(8) == 8);
    CHECK(is_pow2(16));
    CHECK_FALSE(is_pow2(12));
    CHECK(log2_exact(32) == 5);
    CHECK_THROWS_AS(log2_exact(12), Error);
    const CMatrix p = pad(CMatrix{{1.0}}, 2, 3);
    CHECK(p.rows() == 2);
    CHECK(p.cols() == 3);
  }

  TEST_CASE("solve_real and slope fit") {
    const RVector x = solve_real({2.0, 1.0, 1.0, 3.0}, {3.0, 5.0});
    CHECK(x[0] == doctest::Approx(0.8));
    CHECK(x[1] == doctest::Approx(1.4));
    CHECK(fit_loglog_slope({1.0, 2.0, 4.0, 8.0}, {3.0, 12.0, 48.0, 192.0}) == doctest::Approx(2.0));
  }

  TEST_CASE("matrix text format round trips exactly") {
    Rng rng(9);
    const CMatrix a = random_matrix(3, 2, rng);
    std::stringstream ss;
    write_matrix(ss, a);
    const CMatrix b = read_matrix(ss);
    CHECK(b.rows() == 3);
    CHECK(b.cols() == 2);
    CHECK(b.storage() == a.storage());
    CHECK(format_real(0.1) == "0.10000000000000001");
    std::stringstream bad("2 2\n1 0 2\n");
    CHECK_THROWS_AS(read_matrix(bad), Error);
  }

  TEST_CASE("density matrix predicates") {
    CHECK(is_density_matrix(CMatrix{{0.5, 0.0}, {0.0, 0.5}}));
    CHECK_FALSE(is_density_matrix(CMatrix{{1.5, 0.0}, {0.0, -0.5}}));
    CHECK(is_normalized({std::sqrt(0.5), std::sqrt(0.5)}));
  }
}

TEST_SUITE("kernels") {
  // Straight triple loop, the reference every backend must reproduce.
  void naive_gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (std::size_t l = 0; l < k; ++l) s += a[i * k + l] * b[l * n + j];
        c[i * n + j] = s;
      }
  }

  TEST_CASE("scalar and AVX2 kernels agree with the naive reference") {
    Rng rng(10);
    for (std::size_t m : {1u, 2u, 3u, 7u, 16u, 33u}) {
      const std::size_t n = m + 2, k = 2 * m + 1;
      const CMatrix a = random_matrix(m, k, rng), b = random_matrix(k, n, rng);
      std::vector<cplx> ref(m * n), cs(m * n), cv(m * n);
      naive_gemm(m, n, k, a.data(), b.data(), ref.data());
      kernels::scalar::gemm(m, n, k, a.data(), k, b.data(), n, cs.data(), n);
      double ds = 0.0, dv = 0.0;
      for (std::size_t i = 0; i < ref.size(); ++i) ds = std::max(ds, std::abs(ref[i] - cs[i]));
      CHECK(ds <= 1e-12);

      const CVector x = random_state(k, rng);
      std::vector<cplx> ys(m), yv(m);
      kernels::scalar::gemv(m, k, a.data(), k, x.data(), ys.data());
      const cplx dot_s = kernels::scalar::dotc(k, x.data(), x.data());
      CHECK(std::abs(dot_s - 1.0) <= 1e-14);
      CVector axs = x, axv = x;
      kernels::scalar::axpy(k, cplx{0.5, -1.0}, x.data(), axs.data());

      if (!kernels::avx2_available()) continue;
      kernels::avx2::gemm(m, n, k, a.data(), k, b.data(), n, cv.data(), n);
      for (std::size_t i = 0; i < ref.size(); ++i) dv = std::max(dv, std::abs(cs[i] - cv[i]));
      CHECK(dv <= 1e-12);
      kernels::avx2::gemv(m, k, a.data(), k, x.data(), yv.data());
      for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-13);
      CHECK(std::abs(kernels::avx2::dotc(k, x.data(), x.data()) - dot_s) <= 1e-14);
      kernels::avx2::axpy(k, cplx{0.5, -1.0}, x.data(), axv.data());
      CHECK(l2_distance(axs, axv) <= 1e-15);
    }
  }

  TEST_CASE("matrix products are backend independent") {
    Rng rng(11);
    const CMatrix a = random_matrix(9, 13, rng), b = random_matrix(13, 6, rng);
    const kernels::Backend saved = kernels::active_backend();
    kernels::set_backend(kernels::Backend::Scalar);
    const CMatrix cs = a * b;
    if (kernels::avx2_available()) {
      kernels::set_backend(kernels::Backend::Avx2);
      CHECK(frobenius_norm(a * b - cs) <= 1e-12);
    }
    kernels::set_backend(saved);
    CHECK(kernels::backend_name(kernels::Backend::Scalar) == "scalar");
  }
}

TEST_SUITE("rng") {
  std::uint64_t splitmix_reference(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t z = seed + n * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  TEST_CASE("counter-based draws follow splitmix64") {
    Rng rng(12345);
    for (std::uint64_t n = 1; n <= 5; ++n) CHECK(rng.next_u64() == splitmix_reference(12345, n));
  }

  TEST_CASE("reproducible streams and ranges") {
    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) {
      const double u = a.uniform();
      CHECK(u == b.uniform());
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
    Rng c(8);
    CHECK(c.index(5) < 5);
    CHECK_THROWS_AS(c.index(0), Error);
  }

  TEST_CASE("Haar unitaries and prescribed singular values") {
    Rng rng(13);
    CHECK(unitarity_defect(haar_unitary(6, rng)) <= 1e-13);
    const CMatrix a = random_with_singular_values(4, {2.0, 1.0, 0.25}, rng);
    const SvdResult s = svd(a);
    CHECK(s.rank == 3);
    CHECK(s.sigma[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.sigma[2] == doctest::Approx(0.25).epsilon(1e-12));
  }
}
