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

// Scenario files: sectioned key = value text.
//
//   [scenario]  name, security (none | ipsec), iterations, seed (64 hex)
//   [link]      latency, jitter (durations: 50us, 1ms, ...), mtu, loss_rate
//   [ike]       proposal, esp_proposal (comma lists), start_action, psk
//   [traffic]   pingpong_messages, payload
//   [e2]        period, metrics (comma list), ports (e2, e42), duration
//
// '#' and ';' start comments. Unknown sections or keys are errors.

#include <chrono>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "pqe2/esp/policy.hpp"
#include "pqe2/ike/proposal.hpp"
#include "pqe2/kem/drbg.hpp"
#include "pqe2/netlab/lab.hpp"

namespace pqe2::bench {

enum class Security : uint8_t { kNone, kIpsec };

std::string_view security_name(Security s);

struct TrafficConfig {
  size_t pingpong_messages = 1000;
  size_t payload = 64;

  friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

struct E2Config {
  std::chrono::milliseconds period{100};
  std::vector<std::string> metrics{"DRB.UEThpDl", "DRB.UEThpUl"};
  uint16_t e2_port = 36421;
  uint16_t e42_port = 36422;
  /// Indication window observed after the xApp subscribes; 0 skips it.
  std::chrono::milliseconds duration{0};

  friend bool operator==(const E2Config&, const E2Config&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  Security security = Security::kNone;
  std::vector<ike::Proposal> proposal;
  std::vector<ike::Proposal> esp_proposal;
  esp::StartAction start_action = esp::StartAction::kTrap;
  size_t iterations = 100;
  kem::Seed seed{};
  netlab::LinkSpec link;
  TrafficConfig traffic;
  E2Config e2;
  std::string psk = "pqe2 lab psk";
};

/// Throws kConfigError naming the offending line.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical text form; parse_config(render_config(c)) == c.
std::string render_config(const ScenarioConfig& cfg);

/// "250ns", "50us", "1.5ms", "2s"; a bare number is microseconds.
std::chrono::nanoseconds parse_duration(std::string_view text);
std::string render_duration(std::chrono::nanoseconds d);

}  // namespace pqe2::bench
