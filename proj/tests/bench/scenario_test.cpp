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

#include "pqe2/bench/scenario.hpp"

#include <gtest/gtest.h>

#include "pqe2/common/error.hpp"
#include "pqe2/stack/testbed.hpp"

namespace pqe2::bench {
namespace {

using namespace std::chrono_literals;

ScenarioConfig small(const std::string& kem_token, size_t iterations = 3) {
  ScenarioConfig c;
  c.name = kem_token.empty() ? "plain" : kem_token;
  c.iterations = iterations;
  c.seed = kem::derive_seed(kem::Seed{}, "scenario-test");
  c.traffic.pingpong_messages = 5;
  if (!kem_token.empty()) {
    c.security = Security::kIpsec;
    c.proposal = ike::parse_proposal_list("aes256gcm16-prfsha256-" + kem_token);
    c.esp_proposal = c.proposal;
  }
  return c;
}

TEST(ScenarioTest, IsolationAcrossIterations) {
  const ScenarioConfig cfg = small("mlkem768");
  const ScenarioReport r = run_scenario(cfg);
  ASSERT_EQ(r.iterations.size(), cfg.iterations);
  const IterationResult alone = run_iteration(cfg, 1);
  EXPECT_EQ(r.iterations[1].transcript_sha256, alone.transcript_sha256);
  EXPECT_EQ(r.iterations[1].sa_init_request_bytes, alone.sa_init_request_bytes);
  // distinct seeds per iteration give distinct handshakes
  EXPECT_NE(r.iterations[0].transcript_sha256, r.iterations[1].transcript_sha256);
}

TEST(ScenarioTest, PlainScenarioHasNoIkeOrEsp) {
  const IterationResult it = run_iteration(small(""), 0, CaptureMode::kFull);
  for (const auto& e : it.capture) {
    EXPECT_NE(e.proto, netlab::Proto::kIke) << e.detail;
    EXPECT_NE(e.proto, netlab::Proto::kEsp) << e.detail;
  }
  EXPECT_FALSE(it.phases);
  EXPECT_EQ(it.pingpong_ns.size(), 5u);
  ASSERT_TRUE(it.xapp.first_packet_ts);
}

TEST(ScenarioTest, TunneledIterationMetrics) {
  const IterationResult it = run_iteration(small("curve25519"), 0, CaptureMode::kFull);
  ASSERT_TRUE(it.phases);
  ASSERT_TRUE(it.handshake_total_ns);
  EXPECT_LE(it.phases->sum_ns(), *it.handshake_total_ns);
  EXPECT_EQ(it.pingpong_ns.size(), 5u);
  EXPECT_EQ(it.pingpong_timeouts, 0u);
  // trap: the xApp's first packet is sealed
  size_t esp = 0;
  for (const auto& e : it.capture) esp += e.proto == netlab::Proto::kEsp;
  EXPECT_GT(esp, 0u);
  EXPECT_GT(xapp_delay(it.xapp), it.phases->sum_ns());
}

TEST(ScenarioTest, SetupCaptureStopsBeforeTraffic) {
  const IterationResult full = run_iteration(small("mlkem512"), 0, CaptureMode::kFull);
  const IterationResult setup = run_iteration(small("mlkem512"), 0, CaptureMode::kSetup);
  EXPECT_TRUE(run_iteration(small("mlkem512"), 0).capture.empty());
  ASSERT_FALSE(setup.capture.empty());
  EXPECT_LT(setup.capture.size(), full.capture.size());
  EXPECT_EQ(extract_phases(setup.capture).sum_ns() > 0, true);
  // xApp connect and its ack, each a SEND and a RECV; no ping-pong yet
  size_t esp = 0;
  for (const auto& e : setup.capture) esp += e.proto == netlab::Proto::kEsp;
  EXPECT_EQ(esp, 4u);
}

TEST(ScenarioTest, E2Window) {
  ScenarioConfig cfg = small("mlkem512", 1);
  cfg.e2.period = 20ms;
  cfg.e2.duration = 200ms;
  const IterationResult it = run_iteration(cfg, 0);
  EXPECT_GE(it.indications, 9u);
  EXPECT_LE(it.indications, 11u);
  EXPECT_LT(it.max_indication_gap_ns, 40'000'000);
}

TEST(ScenarioTest, FailureNamesTheIteration) {
  ScenarioConfig cfg = small("curve25519", 2);
  cfg.link.loss_rate = 0.999;
  try {
    run_scenario(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kProtocolFailure);
    EXPECT_NE(std::string(e.what()).find("iteration 0"), std::string::npos) << e.what();
  }
}

TEST(PingpongTest, NullLinkIsNearZero) {
  netlab::LinkSpec zero;
  zero.latency = 0ns;
  zero.jitter = 0ns;
  stack::TestbedConfig tc;
  tc.link = zero;
  tc.seed = kem::derive_seed(kem::Seed{}, "null-link");
  stack::Testbed tb(tc);
  const auto a = stack::addresses();
  const PingpongResult r = pingpong(tb.vm2, a.vm2, tb.vm1, a.vm1, 50, 64);
  ASSERT_EQ(r.one_way_ns.size(), 50u);
  EXPECT_EQ(r.timeouts, 0u);
  std::vector<int64_t> us;
  for (int64_t v : r.one_way_ns) us.push_back(ns_to_us(v));
  // dispatcher overhead only; no link delay
  EXPECT_LT(summarize(us).median, 20);
}

TEST(PingpongTest, LostMessagesAreCountedNotSampled) {
  netlab::LinkSpec lossy;
  lossy.loss_rate = 0.5;
  stack::TestbedConfig tc;
  tc.link = lossy;
  tc.seed = kem::derive_seed(kem::Seed{}, "lossy-link");
  stack::Testbed tb(tc);
  const auto a = stack::addresses();
  const PingpongResult r = pingpong(tb.vm2, a.vm2, tb.vm1, a.vm1, 40, 64, 2ms);
  EXPECT_EQ(r.one_way_ns.size() + r.timeouts, 40u);
  EXPECT_GT(r.timeouts, 0u);
  EXPECT_GT(r.one_way_ns.size(), 0u);
}

TEST(XappDelayTest, Basics) {
  EXPECT_EQ(xapp_delay({1000, 1000}), 0);
  EXPECT_EQ(xapp_delay({1000, 2'033'529'000}), 2'033'528'000);
  EXPECT_THROW(xapp_delay({1000, std::nullopt}), Error);
}

}  // namespace
}  // namespace pqe2::bench
