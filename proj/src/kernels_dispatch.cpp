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

#include <cstdlib>
#include <string_view>

#include "coalition/kernels.hpp"

namespace coalition::kernels {

#if defined(COALITION_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif

const KernelTable* avx2_kernels() {
#if defined(COALITION_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2Kernels : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("COALITION_SIMD");
  const std::string_view request = env != nullptr ? env : "auto";
  if (request == "scalar") return scalar_kernels();
  if (const KernelTable* wide = avx2_kernels()) return *wide;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace coalition::kernels
