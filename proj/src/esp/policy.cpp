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

#include "pqe2/esp/policy.hpp"

#include "pqe2/common/error.hpp"

namespace pqe2::esp {

std::string_view start_action_name(StartAction a) { return a == StartAction::kTrap ? "trap" : "start"; }

StartAction parse_start_action(std::string_view s) {
  if (s == "trap") return StartAction::kTrap;
  if (s == "start") return StartAction::kStart;
  throw Error(Errc::kMalformedString, "start_action '" + std::string(s) + "'");
}

TrapAction trap_intercept(const SecurityPolicy& policy, TunnelStatus status, const InnerPacket& outbound,
                          size_t queued) {
  if (!policy.selectors.matches(outbound.src, outbound.dst)) return TrapAction::kSendPlain;
  switch (status) {
    case TunnelStatus::kEstablished: return TrapAction::kSeal;
    case TunnelStatus::kFailed: return TrapAction::kDrop;
    case TunnelStatus::kNone:
    case TunnelStatus::kNegotiating: break;
  }
  if (queued >= policy.queue_limit) {
    throw Error(Errc::kQueueOverflow, "trap queue holds " + std::to_string(queued) + " packets");
  }
  return status == TunnelStatus::kNone ? TrapAction::kQueueAndInitiate : TrapAction::kQueue;
}

}  // namespace pqe2::esp
