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

#include "pqe2/ike/message.hpp"

#include <limits>

namespace pqe2::ike {

namespace {

void write_payloads(ByteWriter& w, const std::vector<Payload>& payloads) {
  if (payloads.size() > std::numeric_limits<uint16_t>::max()) {
    throw Error(Errc::kLengthOverflow, "too many payloads");
  }
  w.u16(static_cast<uint16_t>(payloads.size()));
  for (const Payload& p : payloads) {
    w.u8(static_cast<uint8_t>(p.tag));
    w.u32(static_cast<uint32_t>(p.data.size()));
    w.bytes(p.data);
  }
}

std::vector<Payload> read_payloads(ByteReader& r) {
  const uint16_t count = r.u16();
  std::vector<Payload> out;
  out.reserve(count);
  for (uint16_t i = 0; i < count; ++i) {
    const uint8_t tag = r.u8();
    if (tag < 1 || tag > static_cast<uint8_t>(PayloadTag::kFragment)) {
      throw Error(Errc::kDecodeError, "unknown payload tag " + std::to_string(tag));
    }
    const uint32_t len = r.u32();
    const ByteView body = r.bytes(len);
    out.push_back({static_cast<PayloadTag>(tag), Bytes(body.begin(), body.end())});
  }
  return out;
}

}  // namespace

const Bytes& IkeMessage::payload(PayloadTag tag) const {
  for (const Payload& p : payloads) {
    if (p.tag == tag) return p.data;
  }
  throw Error(Errc::kDecodeError, "missing payload tag " + std::to_string(static_cast<int>(tag)));
}

bool IkeMessage::has(PayloadTag tag) const {
  for (const Payload& p : payloads) {
    if (p.tag == tag) return true;
  }
  return false;
}

size_t IkeMessage::wire_size() const {
  size_t n = kHeaderBytes;
  for (const Payload& p : payloads) n += kPayloadHeaderBytes + p.data.size();
  return n;
}

Bytes encode(const IkeMessage& msg) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(msg.exchange));
  w.u8(static_cast<uint8_t>(msg.role));
  w.u32(msg.msg_id);
  w.u8(msg.fragment_info ? msg.fragment_info->index : 0);
  w.u8(msg.fragment_info ? msg.fragment_info->total : 0);
  write_payloads(w, msg.payloads);
  return std::move(w).take();
}

IkeMessage decode(ByteView wire) {
  ByteReader r(wire);
  IkeMessage msg;
  const uint8_t exchange = r.u8();
  if (exchange < 1 || exchange > 3) throw Error(Errc::kDecodeError, "exchange " + std::to_string(exchange));
  msg.exchange = static_cast<Exchange>(exchange);
  const uint8_t role = r.u8();
  if (role > 1) throw Error(Errc::kDecodeError, "role " + std::to_string(role));
  msg.role = static_cast<MsgRole>(role);
  msg.msg_id = r.u32();
  const uint8_t index = r.u8();
  const uint8_t total = r.u8();
  if (total != 0) {
    if (index < 1 || index > total) throw Error(Errc::kDecodeError, "fragment index out of range");
    msg.fragment_info = FragmentInfo{index, total};
  } else if (index != 0) {
    throw Error(Errc::kDecodeError, "fragment index without total");
  }
  msg.payloads = read_payloads(r);
  if (!r.empty()) throw Error(Errc::kDecodeError, "trailing bytes after payloads");
  return msg;
}

Bytes encode_payloads(const std::vector<Payload>& payloads) {
  ByteWriter w;
  write_payloads(w, payloads);
  return std::move(w).take();
}

std::vector<Payload> decode_payloads(ByteView data) {
  ByteReader r(data);
  auto out = read_payloads(r);
  if (!r.empty()) throw Error(Errc::kDecodeError, "trailing bytes after payloads");
  return out;
}

std::string_view exchange_name(Exchange ex) {
  switch (ex) {
    case Exchange::kSaInit: return "IKE_SA_INIT";
    case Exchange::kAuth: return "IKE_AUTH";
    case Exchange::kCreateChild: return "CREATE_CHILD_SA";
  }
  return "?";
}

std::string_view role_name(MsgRole role) { return role == MsgRole::kRequest ? "request" : "response"; }

}  // namespace pqe2::ike
