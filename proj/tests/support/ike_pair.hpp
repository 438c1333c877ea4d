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

// Drives two IKE state machines against each other in memory.

#include <deque>

#include "pqe2/ike/sa.hpp"

namespace pqe2::testing {

inline ike::IkeConfig peer_config(ike::Role role, kem::KemParamSet kem) {
  ike::IkeConfig cfg;
  cfg.role = role;
  cfg.proposals = {{ike::Aead::kAes256Gcm16, ike::Prf::kHmacSha256, kem}};
  cfg.esp_proposals = cfg.proposals;
  cfg.psk = to_bytes("lab secret");
  const bool init = role == ike::Role::kInitiator;
  cfg.id = init ? "vm1" : "vm2";
  cfg.peer_id = init ? "vm2" : "vm1";
  const auto a = ike::parse_subnet_list("10.0.10.1/24, 172.16.1.0/27");
  const auto b = ike::parse_subnet_list("10.0.10.2/24, 172.16.2.32/27");
  cfg.selectors = init ? ike::TrafficSelectors{a, b} : ike::TrafficSelectors{b, a};
  return cfg;
}

struct Handshake {
  ike::IkeSaState initiator;
  ike::IkeSaState responder;
  std::vector<Bytes> transcript;  // every datagram, in send order
  std::optional<ike::ChildSaKeys> keys_i;
  std::optional<ike::ChildSaKeys> keys_r;
};

inline Handshake run_handshake(ike::IkeConfig ci, ike::IkeConfig cr, const kem::Seed& seed_i,
                               const kem::Seed& seed_r) {
  Handshake h{ike::IkeSaState(std::move(ci), seed_i), ike::IkeSaState(std::move(cr), seed_r), {}, {}, {}};
  struct InFlight {
    bool to_responder;
    ike::IkeMessage msg;
  };
  std::deque<InFlight> wire;
  auto deliver = [&](ike::StepResult r, bool from_initiator) {
    for (auto& m : r.outbound) {
      h.transcript.push_back(ike::encode(m));
      wire.push_back({from_initiator, ike::decode(h.transcript.back())});
    }
    if (r.child_keys) (from_initiator ? h.keys_i : h.keys_r) = r.child_keys;
    (from_initiator ? h.initiator : h.responder) = std::move(r.state);
  };
  deliver(ike::step(std::move(h.initiator), ike::StartEvent{}), true);
  for (int guard = 0; !wire.empty() && guard < 100; ++guard) {
    InFlight f = std::move(wire.front());
    wire.pop_front();
    if (f.to_responder) {
      deliver(ike::step(std::move(h.responder), ike::InboundEvent{f.msg}), false);
    } else {
      deliver(ike::step(std::move(h.initiator), ike::InboundEvent{f.msg}), true);
    }
  }
  return h;
}

}  // namespace pqe2::testing
