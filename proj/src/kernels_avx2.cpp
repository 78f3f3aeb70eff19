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

// This translation unit is compiled with -mavx2 -mfma. Nothing here may be
// called unless the dispatcher has confirmed CPU support.

#include "qpolar/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qpolar::kernels::avx2 {

namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline cplx hsum2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

}  // namespace

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = c + i * ldc;
    for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx av = a[i * lda + p];
      if (av.real() == 0.0 && av.imag() == 0.0) continue;
      const __m256d ar = _mm256_set1_pd(av.real());
      const __m256d ai = _mm256_set1_pd(av.imag());
      const cplx* bp = b + p * ldb;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = load2(bp + j);
        const __m256d t = _mm256_mul_pd(ai, swap_re_im(bv));
        const __m256d prod = _mm256_fmaddsub_pd(ar, bv, t);
        store2(ci + j, _mm256_add_pd(load2(ci + j), prod));
      }
      for (; j < n; ++j) ci[j] += av * bp[j];
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* row = a + i * lda;
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < n2; j += 2) {
      const __m256d av = load2(row + j);
      const __m256d xv = load2(x + j);
      acc1 = _mm256_fmadd_pd(_mm256_movedup_pd(av), xv, acc1);
      acc2 = _mm256_fmadd_pd(_mm256_permute_pd(av, 0xF), swap_re_im(xv), acc2);
    }
    cplx s = hsum2(_mm256_addsub_pd(acc1, acc2));
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j < n2; j += 2) {
    const __m256d xv = load2(x + j);
    const __m256d yv = load2(y + j);
    acc1 = _mm256_fmadd_pd(_mm256_movedup_pd(xv), yv, acc1);
    acc2 = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0xF), swap_re_im(yv), acc2);
  }
  const __m256d neg = _mm256_sub_pd(_mm256_setzero_pd(), acc2);
  cplx s = hsum2(_mm256_addsub_pd(acc1, neg));
  for (; j < n; ++j) s += std::conj(x[j]) * y[j];
  return s;
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t j = 0;
  for (; j < n2; j += 2) {
    const __m256d xv = load2(x + j);
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_re_im(xv)));
    store2(y + j, _mm256_add_pd(load2(y + j), prod));
  }
  for (; j < n; ++j) y[j] += alpha * x[j];
}

}  // namespace qpolar::kernels::avx2

#else

// Targets without AVX2: the dispatcher never selects this path, but the
// symbols must exist.
namespace qpolar::kernels::avx2 {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc) {
  scalar::gemm(m, n, k, a, lda, b, ldb, c, ldc);
}
void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y) {
  scalar::gemv(m, n, a, lda, x, y);
}
cplx dotc(std::size_t n, const cplx* x, const cplx* y) { return scalar::dotc(n, x, y); }
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) { scalar::axpy(n, alpha, x, y); }
}  // namespace qpolar::kernels::avx2

#endif
