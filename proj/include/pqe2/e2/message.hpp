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

// Compact E2AP-style messages:
//
//   [u8 kind][u32 txn_id][u16 record count]
//   per record [u8 keylen][key][u16 vallen][val]
//
// Keys may repeat (one "metric" record per metric name). An INDICATION
// carries the subscription id in txn_id and exactly one record per
// subscribed metric.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqe2/common/bytes.hpp"

namespace pqe2::e2 {

inline constexpr uint16_t kRicPort = 36421;
inline constexpr uint16_t kE42Port = 36422;

enum class Kind : uint8_t {
  kE2SetupReq = 1,
  kE2SetupResp = 2,
  kSubReq = 3,
  kSubResp = 4,
  kIndication = 5,
  kXappConnect = 6,
  kXappConnectAck = 7,
};

std::string_view kind_name(Kind k);

struct Record {
  std::string key;
  Bytes value;

  friend bool operator==(const Record&, const Record&) = default;
};

struct E2Message {
  Kind kind = Kind::kE2SetupReq;
  uint32_t txn_id = 0;
  std::vector<Record> body;

  void add(std::string key, std::string_view value);
  /// First value under `key` as text; nullopt when absent.
  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> all(std::string_view key) const;
  std::vector<std::string> keys() const;

  friend bool operator==(const E2Message&, const E2Message&) = default;
};

Bytes encode(const E2Message& msg);
/// Throws kDecodeError on truncation, trailing bytes or an unknown kind.
E2Message decode_e2(ByteView wire);

}  // namespace pqe2::e2
