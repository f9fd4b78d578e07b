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

#include "coalition/kernels.hpp"

namespace coalition::kernels {
namespace {

double weighted_difference_sum(const double* lo, const double* hi,
                               const double* weight, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += weight[k] * (hi[k] - lo[k]);
  return acc;
}

void add_constant(const double* src, double c, double* dst, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] = src[k] + c;
}

void subtract(const double* a, const double* b, double* dst, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] = a[k] - b[k];
}

void subtract_scaled(double* dst, const double* src, double alpha,
                     std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] -= alpha * src[k];
}

constexpr KernelTable kScalar{
    "scalar", weighted_difference_sum, add_constant, subtract, subtract_scaled,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace coalition::kernels
