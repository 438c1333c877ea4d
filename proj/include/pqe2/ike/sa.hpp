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

// IKE SA state machine. Three exchanges, each one request/response pair:
//
//   msg 0  IKE_SA_INIT      SA, KE, NONCE                 (cleartext)
//   msg 1  IKE_AUTH         ENCRYPTED{AUTH}
//   msg 2  CREATE_CHILD_SA  ENCRYPTED{SA, NONCE, TSi, TSr}
//
// `step` is a pure function: all randomness comes from the RNG carried in
// the state, and timers are requested through StepResult::arm_timer.
//
// SA payload layout: [u64 IKE SPI] or [u32 ESP SPI], then [u8 count] and
// per proposal [u8 aead][u8 prf][u16 kem]. ENCRYPTED payload layout:
// [8-byte IV][ciphertext | 16-byte tag], nonce = salt | IV, IV = msg_id,
// associated data = the first six header bytes.

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pqe2/ike/fragment.hpp"
#include "pqe2/ike/keys.hpp"
#include "pqe2/ike/message.hpp"
#include "pqe2/ike/proposal.hpp"
#include "pqe2/ike/selectors.hpp"
#include "pqe2/kem/drbg.hpp"
#include "pqe2/kem/kem.hpp"

namespace pqe2::ike {

enum class Role : uint8_t { kInitiator, kResponder };

enum class Phase : uint8_t { kIdle, kInitSent, kInitDone, kAuthDone, kChildEstablished, kFailed };

std::string_view phase_name(Phase p);

struct IkeConfig {
  Role role = Role::kInitiator;
  std::vector<Proposal> proposals;
  std::vector<Proposal> esp_proposals;
  Bytes psk;
  std::string id;
  std::string peer_id;
  /// Own point of view: local = this side's protected prefixes.
  TrafficSelectors selectors;
  /// Largest IKE message per datagram; bigger messages are fragmented.
  size_t mtu = 1372;
  std::chrono::microseconds retransmit_timeout{500'000};
  int max_retries = 3;
};

struct StartEvent {};
struct InboundEvent {
  IkeMessage msg;
};
struct TimeoutEvent {
  uint32_t msg_id;
};
using IkeEvent = std::variant<StartEvent, InboundEvent, TimeoutEvent>;

struct IkeFailure {
  Errc code;
  std::string message;
};

struct IkeSaState {
  IkeConfig config;
  kem::SeedableRandomSource rng;

  Role role = Role::kInitiator;
  Phase phase = Phase::kIdle;
  std::vector<Phase> history{Phase::kIdle};
  std::optional<Proposal> chosen;
  Bytes ni;
  Bytes nr;
  uint64_t spi_i = 0;
  uint64_t spi_r = 0;
  std::optional<kem::KemKeyPair> kem_pair;
  std::optional<KeyMaterial> keys;
  /// Encoded, unfragmented IKE_SA_INIT request and response; AUTH signs them.
  Bytes init_request;
  Bytes init_response;

  std::optional<Proposal> child_chosen;
  Bytes child_ni;
  Bytes child_nr;
  uint32_t child_spi_i = 0;
  uint32_t child_spi_r = 0;
  std::optional<ChildSaKeys> child_keys;

  uint32_t next_msg_id = 0;
  std::optional<uint32_t> awaiting;
  int retries = 0;
  std::vector<IkeMessage> last_sent;
  std::optional<uint32_t> last_response_id;
  Reassembler reassembler;
  std::optional<IkeFailure> failure;

  IkeSaState(IkeConfig cfg, const kem::Seed& seed);
};

struct StepResult {
  IkeSaState state;
  /// Framed and already fragmented to config.mtu.
  std::vector<IkeMessage> outbound;
  std::optional<ChildSaKeys> child_keys;
  /// Guard this request id with the retransmission timer.
  std::optional<uint32_t> arm_timer;
};

StepResult step(IkeSaState state, const IkeEvent& event);

/// Own AUTH value. Requires phase INIT_DONE or later.
Bytes authenticate(const IkeSaState& state, ByteView psk);
/// Throws kAuthenticationFailed unless `auth` is the peer's value for
/// this transcript (constant-time comparison).
void verify_peer_auth(const IkeSaState& state, ByteView psk, ByteView auth);

Bytes encode_ike_sa(uint64_t spi, const std::vector<Proposal>& proposals);
Bytes encode_esp_sa(uint32_t spi, const std::vector<Proposal>& proposals);

}  // namespace pqe2::ike
