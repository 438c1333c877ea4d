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

#include "pqe2/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pqe2/common/error.hpp"

namespace pqe2::bench {

int64_t percentile(std::vector<int64_t> samples, double q) {
  if (samples.empty()) throw Error(Errc::kEmptySamples, "percentile of no samples");
  std::sort(samples.begin(), samples.end());
  const auto idx = static_cast<size_t>(std::floor(q * static_cast<double>(samples.size() - 1)));
  return samples[std::min(idx, samples.size() - 1)];
}

LatencyStats summarize(const std::vector<int64_t>& samples) {
  if (samples.empty()) throw Error(Errc::kEmptySamples, "summarize needs at least one sample");
  std::vector<int64_t> s = samples;
  std::sort(s.begin(), s.end());
  LatencyStats out;
  out.n = s.size();
  out.mean = static_cast<double>(std::accumulate(s.begin(), s.end(), int64_t{0})) / static_cast<double>(s.size());
  out.median = s[static_cast<size_t>(std::floor(0.5 * static_cast<double>(s.size() - 1)))];
  out.p95 = s[static_cast<size_t>(std::floor(0.95 * static_cast<double>(s.size() - 1)))];
  out.min = s.front();
  out.max = s.back();
  return out;
}

}  // namespace pqe2::bench
