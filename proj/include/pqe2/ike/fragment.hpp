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

// Oversized messages are carried as a run of fragment messages. Each
// fragment repeats the original exchange/role/msg_id, sets fragment_info
// to {i, N} and holds one FRAGMENT payload with the i-th chunk of the
// original encoded message, so every fragment costs
// kFragmentOverhead bytes on top of its chunk.

#include <map>
#include <tuple>
#include <vector>

#include "pqe2/ike/message.hpp"

namespace pqe2::ike {

constexpr size_t kFragmentOverhead = kHeaderBytes + kPayloadHeaderBytes;
constexpr size_t kMaxFragments = 255;

/// ceil(wire_size / (mtu - header)); 1 when the message fits.
size_t fragment_count(size_t wire_size, size_t mtu, size_t header = kFragmentOverhead);

std::vector<IkeMessage> fragment(const IkeMessage& msg, size_t mtu);

/// Reassembles one complete fragment set (any order).
IkeMessage reassemble(const std::vector<IkeMessage>& fragments);

/// Size of the original message given the wire sizes of its fragments.
size_t unfragmented_size(const std::vector<size_t>& fragment_wire_sizes);

/// Incremental reassembly keyed by (exchange, role, msg_id).
class Reassembler {
 public:
  /// Returns the complete message once the last missing piece arrives;
  /// unfragmented input passes straight through.
  std::optional<IkeMessage> add(const IkeMessage& msg);
  size_t pending() const noexcept { return partial_.size(); }

 private:
  using Key = std::tuple<Exchange, MsgRole, uint32_t>;
  std::map<Key, std::vector<std::optional<Bytes>>> partial_;
};

}  // namespace pqe2::ike
