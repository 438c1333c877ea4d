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

// Scenario runner. Every iteration builds a fresh two-VM testbed seeded
// with derive_seed(config.seed, "iteration", i) and runs, in order:
//
//   1. the IPsec policies are installed (START: the tunnel comes up here)
//   2. the xApp is launched on vm1 and connects to the RIC on vm2
//      (TRAP: this is the packet that triggers the exchange)
//   3. ping-pong from a client on vm2 to a server on vm1
//   4. optionally, E2 setup + subscription and an indication window

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "pqe2/bench/config.hpp"
#include "pqe2/bench/phases.hpp"
#include "pqe2/bench/stats.hpp"
#include "pqe2/e2/agents.hpp"
#include "pqe2/netlab/capture.hpp"
#include "pqe2/stack/host.hpp"

namespace pqe2::bench {

inline constexpr uint16_t kPingpongPort = 11111;

struct WireOverhead {
  size_t esp = 24;           // spi + seq + tag
  size_t inner_header = 10;  // src + dst + port
  size_t datagram = 28;      // IPv4 + UDP framing charged per datagram
};

/// How much of an iteration's capture to keep in its result.
enum class CaptureMode : uint8_t {
  kNone,
  kSetup,  // up to the xApp's connection (tunnel setup included)
  kFull,
};

struct IterationResult {
  size_t iteration = 0;
  std::optional<PhaseBreakdown> phases;
  /// First IKE SEND to child SA installation at the initiator.
  std::optional<int64_t> handshake_total_ns;
  std::optional<size_t> sa_init_request_bytes;
  std::vector<int64_t> pingpong_ns;  // one-way = RTT / 2
  size_t pingpong_timeouts = 0;
  e2::XappRunRecord xapp;
  size_t indications = 0;
  int64_t max_indication_gap_ns = 0;
  /// SHA-256 over every IKE datagram in send order.
  std::string transcript_sha256;
  std::vector<netlab::CaptureEvent> capture;
};

struct ScenarioReport {
  ScenarioConfig config;
  std::vector<IterationResult> iterations;
  WireOverhead overhead;
};

struct PingpongResult {
  std::vector<int64_t> one_way_ns;
  size_t timeouts = 0;
};

/// `n` sequential request/echo round trips from client to server; a
/// message without its echo within `timeout` is counted and skipped.
PingpongResult pingpong(stack::Host& client, ike::Ipv4 client_addr, stack::Host& server, ike::Ipv4 server_addr,
                        size_t n, size_t payload, std::chrono::nanoseconds timeout = std::chrono::milliseconds(100));

/// first_packet_ts - start_ts. Throws kProtocolFailure when the record has
/// no first packet.
int64_t xapp_delay(const e2::XappRunRecord& record);

/// One iteration as run_scenario would run it. Throws kProtocolFailure
/// naming the iteration.
IterationResult run_iteration(const ScenarioConfig& cfg, size_t index, CaptureMode capture = CaptureMode::kNone);

ScenarioReport run_scenario(const ScenarioConfig& cfg, CaptureMode capture = CaptureMode::kNone);

/// Per-phase, ping-pong and xApp delay summaries in integer microseconds.
LatencyStats phase_stats(const ScenarioReport& r, std::string_view phase);
LatencyStats pingpong_stats(const ScenarioReport& r);
LatencyStats xapp_delay_stats(const ScenarioReport& r);

}  // namespace pqe2::bench
