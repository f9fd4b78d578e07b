// Copyright 2026 The Coalition Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built with -mavx2 (no -mfma) and only reached after a runtime CPU check.

#include <immintrin.h>

#include "coalition/kernels.hpp"

namespace coalition::kernels {
namespace {

double weighted_difference_sum(const double* lo, const double* hi,
                               const double* weight, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(hi + k), _mm256_loadu_pd(lo + k));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(hi + k + 4), _mm256_loadu_pd(lo + k + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(weight + k), d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(weight + k + 4), d1));
  }
  for (; k + 4 <= n; k += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(hi + k), _mm256_loadu_pd(lo + k));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(weight + k), d0));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; k < n; ++k) total += weight[k] * (hi[k] - lo[k]);
  return total;
}

void add_constant(const double* src, double c, double* dst, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(dst + k, _mm256_add_pd(_mm256_loadu_pd(src + k), vc));
  }
  for (; k < n; ++k) dst[k] = src[k] + c;
}

void subtract(const double* a, const double* b, double* dst, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(dst + k, _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  for (; k < n; ++k) dst[k] = a[k] - b[k];
}

void subtract_scaled(double* dst, const double* src, double alpha,
                     std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d scaled = _mm256_mul_pd(va, _mm256_loadu_pd(src + k));
    _mm256_storeu_pd(dst + k, _mm256_sub_pd(_mm256_loadu_pd(dst + k), scaled));
  }
  for (; k < n; ++k) dst[k] -= alpha * src[k];
}

}  // namespace

extern const KernelTable kAvx2Kernels{
    "avx2", weighted_difference_sum, add_constant, subtract, subtract_scaled,
};

}  // namespace coalition::kernels
