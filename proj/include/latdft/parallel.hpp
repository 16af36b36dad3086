// Copyright 2026 The latdft Authors.
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

#ifndef LATDFT_PARALLEL_HPP_
#define LATDFT_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace latdft {

// Worker count: LATDFT_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(i) for i in [begin, end) on up to thread_count() threads in
// contiguous chunks. Each index must write only its own outputs, so results
// do not depend on the thread count. The first exception thrown by any
// chunk is rethrown after all threads join.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace latdft

#endif  // LATDFT_PARALLEL_HPP_
