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

// ESP-style tunnel packets.
//
//   wire   [u32 spi][u32 seq][ciphertext | 16-byte tag]
//   nonce  salt(4) | u64 seq
//   aad    spi | seq
//   inner  [u32 src][u32 dst][u16 port][payload]

#include <array>
#include <cstdint>

#include "pqe2/common/bytes.hpp"
#include "pqe2/ike/keys.hpp"
#include "pqe2/ike/selectors.hpp"

namespace pqe2::esp {

inline constexpr size_t kEspHeaderBytes = 8;
inline constexpr size_t kEspTagBytes = 16;
/// Bytes added to every inner packet by encapsulation.
inline constexpr size_t kEspOverhead = kEspHeaderBytes + kEspTagBytes;
inline constexpr size_t kInnerHeaderBytes = 10;
inline constexpr size_t kReplayWindowSize = 64;

struct EspPacket {
  uint32_t spi = 0;
  uint32_t seq = 0;
  std::array<uint8_t, 12> nonce{};
  Bytes ciphertext;  // includes the tag

  size_t wire_size() const { return kEspHeaderBytes + ciphertext.size(); }
};

Bytes encode(const EspPacket& pkt);
/// The nonce is not on the wire; decode leaves it zero.
EspPacket decode_esp(ByteView wire);

class ReplayWindow {
 public:
  /// True when `seq` has not been accepted and is not older than the window.
  bool check(uint32_t seq) const;
  /// Marks `seq` as seen. Call only after the packet authenticated.
  void accept(uint32_t seq);

  uint32_t highest() const { return highest_; }

 private:
  uint32_t highest_ = 0;
  uint64_t bitmap_ = 0;  // bit i = highest_ - i seen
};

/// One direction pair of a child SA as owned by one endpoint.
struct TunnelEndpoint {
  ike::ChildSaKeys keys;
  uint32_t last_seq = 0;
  ReplayWindow window;
  bool failed = false;

  explicit TunnelEndpoint(const ike::ChildSaKeys& k) : keys(k) {}
};

/// Encrypts under key_out with the next sequence number. Throws
/// kSequenceExhausted once 2^32 - 1 has been used and marks the tunnel failed.
EspPacket esp_seal(TunnelEndpoint& tunnel, ByteView inner);

/// Returns the inner bytes and records seq in `win`. Throws kUnknownSpi,
/// kReplayDetected or kAuthFailed.
Bytes esp_open(const ike::ChildSaKeys& keys, const EspPacket& pkt, ReplayWindow& win);

inline Bytes esp_open(TunnelEndpoint& tunnel, const EspPacket& pkt) {
  return esp_open(tunnel.keys, pkt, tunnel.window);
}

struct InnerPacket {
  ike::Ipv4 src = 0;
  ike::Ipv4 dst = 0;
  uint16_t port = 0;
  Bytes payload;

  friend bool operator==(const InnerPacket&, const InnerPacket&) = default;
};

Bytes encode(const InnerPacket& pkt);
InnerPacket decode_inner(ByteView wire);

}  // namespace pqe2::esp
