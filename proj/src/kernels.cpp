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

#include "qpolar/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace qpolar::kernels {

namespace {

Backend detect() {
  if (const char* env = std::getenv("QPOLAR_FORCE_SCALAR"); env && std::strcmp(env, "0") != 0) {
    return Backend::Scalar;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect()};
  return slot;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
  backend_slot().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc) {
  if (active_backend() == Backend::Avx2) {
    avx2::gemm(m, n, k, a, lda, b, ldb, c, ldc);
  } else {
    scalar::gemm(m, n, k, a, lda, b, ldb, c, ldc);
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y) {
  if (active_backend() == Backend::Avx2) {
    avx2::gemv(m, n, a, lda, x, y);
  } else {
    scalar::gemv(m, n, a, lda, x, y);
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return active_backend() == Backend::Avx2 ? avx2::dotc(n, x, y) : scalar::dotc(n, x, y);
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  if (active_backend() == Backend::Avx2) {
    avx2::axpy(n, alpha, x, y);
  } else {
    scalar::axpy(n, alpha, x, y);
  }
}

}  // namespace qpolar::kernels
