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

namespace qpolar::kernels::scalar {

// Complex products are spelled out in real arithmetic so the reference
// path does not depend on the library's NaN-aware operator*.
namespace {
inline void mul_acc(double ar, double ai, double br, double bi, double& cr, double& ci) {
  cr += ar * br - ai * bi;
  ci += ar * bi + ai * br;
}
}  // namespace

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
          const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    auto* ci = reinterpret_cast<double*>(c + i * ldc);
    for (std::size_t j = 0; j < 2 * n; ++j) ci[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * lda + p].real();
      const double ai = a[i * lda + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const auto* bp = reinterpret_cast<const double*>(b + p * ldb);
      for (std::size_t j = 0; j < n; ++j) {
        mul_acc(ar, ai, bp[2 * j], bp[2 * j + 1], ci[2 * j], ci[2 * j + 1]);
      }
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, std::size_t lda, const cplx* x,
          cplx* y) {
  for (std::size_t i = 0; i < m; ++i) {
    double sr = 0.0, si = 0.0;
    const cplx* row = a + i * lda;
    for (std::size_t j = 0; j < n; ++j) {
      mul_acc(row[j].real(), row[j].imag(), x[j].real(), x[j].imag(), sr, si);
    }
    y[i] = {sr, si};
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mul_acc(x[i].real(), -x[i].imag(), y[i].real(), y[i].imag(), sr, si);
  }
  return {sr, si};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double yr = y[i].real(), yi = y[i].imag();
    mul_acc(ar, ai, x[i].real(), x[i].imag(), yr, yi);
    y[i] = {yr, yi};
  }
}

}  // namespace qpolar::kernels::scalar
