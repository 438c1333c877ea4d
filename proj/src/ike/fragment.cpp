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

#include "pqe2/ike/fragment.hpp"

#include <algorithm>

namespace pqe2::ike {

namespace {

IkeMessage join(const std::vector<std::optional<Bytes>>& chunks) {
  Bytes wire;
  for (const auto& c : chunks) append(wire, *c);
  return decode(wire);
}

}  // namespace

size_t fragment_count(size_t wire_size, size_t mtu, size_t header) {
  if (mtu <= header) throw Error(Errc::kMtuTooSmall, "mtu " + std::to_string(mtu) + " <= header");
  if (wire_size <= mtu) return 1;
  const size_t chunk = mtu - header;
  return (wire_size + chunk - 1) / chunk;
}

std::vector<IkeMessage> fragment(const IkeMessage& msg, size_t mtu) {
  if (mtu <= kFragmentOverhead) throw Error(Errc::kMtuTooSmall, "mtu " + std::to_string(mtu));
  Bytes wire = encode(msg);
  if (wire.size() <= mtu) {
    IkeMessage whole = msg;
    whole.fragment_info.reset();
    return {std::move(whole)};
  }
  const size_t n = fragment_count(wire.size(), mtu);
  if (n > kMaxFragments) {
    throw Error(Errc::kMtuTooSmall, std::to_string(wire.size()) + " bytes need " + std::to_string(n) + " fragments");
  }
  const size_t chunk = mtu - kFragmentOverhead;
  std::vector<IkeMessage> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    IkeMessage frag;
    frag.exchange = msg.exchange;
    frag.role = msg.role;
    frag.msg_id = msg.msg_id;
    frag.fragment_info = FragmentInfo{static_cast<uint8_t>(i + 1), static_cast<uint8_t>(n)};
    const size_t begin = i * chunk;
    const size_t end = std::min(wire.size(), begin + chunk);
    frag.payloads.push_back({PayloadTag::kFragment, Bytes(wire.begin() + begin, wire.begin() + end)});
    out.push_back(std::move(frag));
  }
  return out;
}

IkeMessage reassemble(const std::vector<IkeMessage>& fragments) {
  if (fragments.empty()) throw Error(Errc::kReassemblyIncomplete, "no fragments");
  Reassembler r;
  std::optional<IkeMessage> done;
  for (const IkeMessage& f : fragments) {
    if (done) throw Error(Errc::kDecodeError, "fragments beyond a complete message");
    done = r.add(f);
  }
  if (!done) throw Error(Errc::kReassemblyIncomplete, "missing fragments");
  return *done;
}

size_t unfragmented_size(const std::vector<size_t>& fragment_wire_sizes) {
  if (fragment_wire_sizes.size() == 1) return fragment_wire_sizes.front();
  size_t n = 0;
  for (size_t s : fragment_wire_sizes) n += s - kFragmentOverhead;
  return n;
}

std::optional<IkeMessage> Reassembler::add(const IkeMessage& msg) {
  if (!msg.fragment_info) return msg;
  const FragmentInfo info = *msg.fragment_info;
  if (msg.payloads.size() != 1 || msg.payloads[0].tag != PayloadTag::kFragment) {
    throw Error(Errc::kDecodeError, "fragment without a single FRAGMENT payload");
  }
  const Key key{msg.exchange, msg.role, msg.msg_id};
  auto& slots = partial_[key];
  if (slots.empty()) slots.resize(info.total);
  if (slots.size() != info.total) {
    partial_.erase(key);
    throw Error(Errc::kDecodeError, "inconsistent fragment total");
  }
  slots[info.index - 1] = msg.payloads[0].data;
  if (std::any_of(slots.begin(), slots.end(), [](const auto& s) { return !s.has_value(); })) return std::nullopt;
  auto node = partial_.extract(key);
  IkeMessage whole = join(node.mapped());
  if (whole.exchange != msg.exchange || whole.role != msg.role || whole.msg_id != msg.msg_id) {
    throw Error(Errc::kDecodeError, "fragment header does not match reassembled message");
  }
  return whole;
}

}  // namespace pqe2::ike
