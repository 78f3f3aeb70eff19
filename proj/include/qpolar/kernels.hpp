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
#include <string_view>

namespace qpolar::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Backend chosen at first use: AVX2+FMA when the CPU reports both,
/// scalar otherwise. QPOLAR_FORCE_SCALAR=1 pins the scalar path.
Backend active_backend();
void set_backend(Backend b);
bool avx2_available();
std::string_view backend_name(Backend b);

// Row-major dense kernels. All matrices are contiguous with the given
// leading dimension (row stride).

/// C = A * B, with A m x k, B k x n, C m x n. C must not alias A or B.
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc);

/// y = A * x, with A m x n.
void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y);

/// sum_i conj(x_i) * y_i
cplx dotc(std::size_t n, const cplx* x, const cplx* y);

/// y += alpha * x
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);

// Explicit per-backend entry points, used by the equivalence tests.
namespace scalar {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc);
void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace scalar

namespace avx2 {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc);
void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace avx2

}  // namespace qpolar::kernels
