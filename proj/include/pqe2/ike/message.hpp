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

// IKE message framing:
//
//   [u8 exchange][u8 role][u32 msg_id][u8 frag index][u8 frag total][u16 payload count]
//   per payload: [u8 tag][u32 length][bytes]
//
// All integers big-endian. An unfragmented message carries index 0 and
// total 0; fragments are numbered 1..total.

#include <optional>
#include <string_view>
#include <vector>

#include "pqe2/common/bytes.hpp"

namespace pqe2::ike {

enum class Exchange : uint8_t { kSaInit = 1, kAuth = 2, kCreateChild = 3 };
enum class MsgRole : uint8_t { kRequest = 0, kResponse = 1 };

enum class PayloadTag : uint8_t {
  kSa = 1,
  kKe = 2,
  kNonce = 3,
  kAuth = 4,
  kTs = 5,
  kEncrypted = 6,
  kFragment = 7,
};

constexpr size_t kHeaderBytes = 10;
constexpr size_t kPayloadHeaderBytes = 5;

struct Payload {
  PayloadTag tag;
  Bytes data;

  friend bool operator==(const Payload&, const Payload&) = default;
};

struct FragmentInfo {
  uint8_t index;
  uint8_t total;

  friend bool operator==(const FragmentInfo&, const FragmentInfo&) = default;
};

struct IkeMessage {
  Exchange exchange = Exchange::kSaInit;
  MsgRole role = MsgRole::kRequest;
  uint32_t msg_id = 0;
  std::vector<Payload> payloads;
  std::optional<FragmentInfo> fragment_info;

  /// First payload with `tag`; throws kDecodeError when absent.
  const Bytes& payload(PayloadTag tag) const;
  bool has(PayloadTag tag) const;
  size_t wire_size() const;

  friend bool operator==(const IkeMessage&, const IkeMessage&) = default;
};

Bytes encode(const IkeMessage& msg);
IkeMessage decode(ByteView wire);

/// Payload list without the message header, used inside ENCRYPTED.
Bytes encode_payloads(const std::vector<Payload>& payloads);
std::vector<Payload> decode_payloads(ByteView data);

std::string_view exchange_name(Exchange ex);
std::string_view role_name(MsgRole role);

}  // namespace pqe2::ike
