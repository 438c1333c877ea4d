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

#include <gtest/gtest.h>

#include <algorithm>

#include "pqe2/common/error.hpp"
#include "pqe2/kem/drbg.hpp"

namespace pqe2::bench {
namespace {

TEST(StatsTest, SmallExamples) {
  const LatencyStats a = summarize({1, 2, 3});
  EXPECT_EQ(a.n, 3u);
  EXPECT_DOUBLE_EQ(a.mean, 2.0);
  EXPECT_EQ(a.median, 2);
  EXPECT_EQ(a.min, 1);
  EXPECT_EQ(a.max, 3);

  const LatencyStats b = summarize({1, 1, 1, 100});
  EXPECT_DOUBLE_EQ(b.mean, 25.75);
  EXPECT_EQ(b.median, 1);
  EXPECT_EQ(b.p95, 1);  // floor(0.95 * 3) = 2
}

TEST(StatsTest, LowerInterpolation) {
  EXPECT_EQ(percentile({10, 20}, 0.5), 10);
  EXPECT_EQ(percentile({40, 10, 30, 20}, 0.5), 20);
  EXPECT_EQ(percentile({5}, 0.95), 5);
  std::vector<int64_t> hundred;
  for (int64_t i = 1; i <= 100; ++i) hundred.push_back(101 - i);
  EXPECT_EQ(percentile(hundred, 0.95), 95);  // sorted[94]
  EXPECT_EQ(percentile(hundred, 0.0), 1);
  EXPECT_EQ(percentile(hundred, 1.0), 100);
}

TEST(StatsTest, EmptyInput) {
  try {
    summarize({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptySamples);
  }
}

TEST(StatsTest, RandomSamplesAgainstSortOracle) {
  auto rng = kem::SeedableRandomSource::from_label("stats");
  for (int round = 0; round < 50; ++round) {
    const size_t n = 1 + rng.next_u32() % 200;
    std::vector<int64_t> v;
    int64_t sum = 0;
    for (size_t i = 0; i < n; ++i) {
      v.push_back(static_cast<int64_t>(rng.next_u32() % 5000));
      sum += v.back();
    }
    const LatencyStats s = summarize(v);
    std::sort(v.begin(), v.end());
    EXPECT_EQ(s.n, n);
    EXPECT_DOUBLE_EQ(s.mean, static_cast<double>(sum) / static_cast<double>(n));
    EXPECT_EQ(s.median, v[(n - 1) / 2]);
    EXPECT_EQ(s.p95, v[static_cast<size_t>(0.95 * static_cast<double>(n - 1))]);
    EXPECT_EQ(s.min, v.front());
    EXPECT_EQ(s.max, v.back());
    EXPECT_LE(s.min, s.median);
    EXPECT_LE(s.median, s.max);
  }
}

TEST(StatsTest, NanosecondRounding) {
  EXPECT_EQ(ns_to_us(0), 0);
  EXPECT_EQ(ns_to_us(499), 0);
  EXPECT_EQ(ns_to_us(500), 1);
  EXPECT_EQ(ns_to_us(1'363'000), 1363);
  EXPECT_EQ(ns_to_us(-1500), -2);
}

}  // namespace
}  // namespace pqe2::bench
