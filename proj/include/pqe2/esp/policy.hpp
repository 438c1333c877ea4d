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

#include <cstddef>
#include <string_view>

#include "pqe2/esp/esp.hpp"
#include "pqe2/ike/sa.hpp"

namespace pqe2::esp {

enum class StartAction : uint8_t { kTrap, kStart };

std::string_view start_action_name(StartAction a);
/// "trap" or "start"; throws kMalformedString otherwise.
StartAction parse_start_action(std::string_view s);

inline constexpr size_t kDefaultTrapQueue = 1024;

struct SecurityPolicy {
  /// Own point of view, as in IkeConfig::selectors.
  ike::TrafficSelectors selectors;
  StartAction start_action = StartAction::kTrap;
  ike::IkeConfig ike;
  size_t queue_limit = kDefaultTrapQueue;
};

enum class TunnelStatus : uint8_t { kNone, kNegotiating, kEstablished, kFailed };

enum class TrapAction : uint8_t {
  kSendPlain,
  kSeal,
  kQueueAndInitiate,
  kQueue,
  kDrop,
};

/// Decision for one outbound packet. Matching traffic never leaves in
/// plaintext: it is sealed when the tunnel is up, held (and the exchange
/// started if nothing is in flight) otherwise, and dropped once the
/// negotiation has failed. Throws kQueueOverflow when holding would exceed
/// policy.queue_limit.
TrapAction trap_intercept(const SecurityPolicy& policy, TunnelStatus status, const InnerPacket& outbound,
                          size_t queued);

}  // namespace pqe2::esp
