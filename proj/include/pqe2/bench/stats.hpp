// Copyright 2026 The pqe2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace pqe2::bench {

/// Durations in integer microseconds; mean keeps its fraction.
struct LatencyStats {
  size_t n = 0;
  double mean = 0;
  int64_t median = 0;
  int64_t p95 = 0;
  int64_t min = 0;
  int64_t max = 0;

  friend bool operator==(const LatencyStats&, const LatencyStats&) = default;
};

/// Lower-interpolated percentile: sorted[floor(q * (n - 1))].
int64_t percentile(std::vector<int64_t> samples, double q);

/// Throws kEmptySamples for an empty list.
LatencyStats summarize(const std::vector<int64_t>& samples);

/// Nanoseconds to the nearest microsecond.
inline int64_t ns_to_us(int64_t ns) { return ns >= 0 ? (ns + 500) / 1000 : -((-ns + 500) / 1000); }

}  // namespace pqe2::bench
