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

#ifndef COALITION_KERNELS_HPP
#define COALITION_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string_view>

namespace coalition::kernels {

// Inner loops over dense worth tables and simplex tableaux. Each instruction
// set provides the same table; the scalar one is the reference.
//
// Elementwise kernels (add_constant, subtract, subtract_scaled) produce
// bit-identical results across variants: no variant contracts a multiply and
// add into an FMA. weighted_difference_sum is a reduction and differs from
// the scalar one only by summation order.
struct KernelTable {
  std::string_view name;
  // sum_k weight[k] * (hi[k] - lo[k])
  double (*weighted_difference_sum)(const double* lo, const double* hi,
                                    const double* weight, std::size_t n);
  // dst[k] = src[k] + c
  void (*add_constant)(const double* src, double c, double* dst,
                       std::size_t n);
  // dst[k] = a[k] - b[k]
  void (*subtract)(const double* a, const double* b, double* dst,
                   std::size_t n);
  // dst[k] -= alpha * src[k]
  void (*subtract_scaled)(double* dst, const double* src, double alpha,
                          std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_kernels();

/// The selected variant. COALITION_SIMD=scalar|avx2 forces a choice; the
/// default picks the widest available.
const KernelTable& active();

inline double weighted_difference_sum(std::span<const double> lo,
                                      std::span<const double> hi,
                                      std::span<const double> weight) {
  return active().weighted_difference_sum(lo.data(), hi.data(), weight.data(),
                                          lo.size());
}

inline void add_constant(std::span<const double> src, double c,
                         std::span<double> dst) {
  active().add_constant(src.data(), c, dst.data(), src.size());
}

inline void subtract(std::span<const double> a, std::span<const double> b,
                     std::span<double> dst) {
  active().subtract(a.data(), b.data(), dst.data(), a.size());
}

inline void subtract_scaled(std::span<double> dst, std::span<const double> src,
                            double alpha) {
  active().subtract_scaled(dst.data(), src.data(), alpha, dst.size());
}

}  // namespace coalition::kernels

#endif  // COALITION_KERNELS_HPP
