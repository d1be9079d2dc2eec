// Copyright 2026 The badgd Authors
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

#ifndef BADGD_PARALLEL_H_
#define BADGD_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace badgd {

// Splits [0, count) into contiguous chunks and runs fn(begin, end) for each on
// its own thread. With threads <= 1 the call runs inline. Callers must make
// each index's work independent of the chunking.
template <typename Fn>
void ParallelFor(int64_t count, int threads, Fn&& fn) {
  if (count <= 0) return;
  const int64_t workers =
      std::clamp<int64_t>(threads, 1, std::max<int64_t>(count, 1));
  if (workers == 1) {
    fn(int64_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const int64_t chunk = (count + workers - 1) / workers;
  for (int64_t begin = 0; begin < count; begin += chunk) {
    const int64_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace badgd

#endif  // BADGD_PARALLEL_H_
