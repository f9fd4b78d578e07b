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

#ifndef COALITION_PARALLEL_HPP
#define COALITION_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace coalition {

/// Worker count: COALITION_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
std::size_t worker_count();

/// Splits [0, count) into contiguous chunks, one per worker, and calls
/// fn(begin, end) for each. Results must not depend on the chunking.
/// Exceptions thrown by fn are rethrown on the calling thread.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_chunk = 1024);

}  // namespace coalition

#endif  // COALITION_PARALLEL_HPP
