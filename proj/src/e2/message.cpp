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

#include "pqe2/e2/message.hpp"

#include "pqe2/common/error.hpp"

namespace pqe2::e2 {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::kE2SetupReq: return "E2_SETUP_REQ";
    case Kind::kE2SetupResp: return "E2_SETUP_RESP";
    case Kind::kSubReq: return "SUB_REQ";
    case Kind::kSubResp: return "SUB_RESP";
    case Kind::kIndication: return "INDICATION";
    case Kind::kXappConnect: return "XAPP_CONNECT";
    case Kind::kXappConnectAck: return "XAPP_CONNECT_ACK";
  }
  return "?";
}

void E2Message::add(std::string key, std::string_view value) { body.push_back({std::move(key), to_bytes(value)}); }

std::optional<std::string> E2Message::get(std::string_view key) const {
  for (const Record& r : body) {
    if (r.key == key) return std::string(r.value.begin(), r.value.end());
  }
  return std::nullopt;
}

std::vector<std::string> E2Message::all(std::string_view key) const {
  std::vector<std::string> out;
  for (const Record& r : body) {
    if (r.key == key) out.emplace_back(r.value.begin(), r.value.end());
  }
  return out;
}

std::vector<std::string> E2Message::keys() const {
  std::vector<std::string> out;
  for (const Record& r : body) out.push_back(r.key);
  return out;
}

Bytes encode(const E2Message& msg) {
  if (msg.body.size() > 0xffff) throw Error(Errc::kLengthOverflow, "too many E2 records");
  ByteWriter w;
  w.u8(static_cast<uint8_t>(msg.kind));
  w.u32(msg.txn_id);
  w.u16(static_cast<uint16_t>(msg.body.size()));
  for (const Record& r : msg.body) {
    if (r.key.size() > 0xff || r.value.size() > 0xffff) throw Error(Errc::kLengthOverflow, "E2 record too long");
    w.u8(static_cast<uint8_t>(r.key.size()));
    w.bytes(to_bytes(r.key));
    w.u16(static_cast<uint16_t>(r.value.size()));
    w.bytes(r.value);
  }
  return std::move(w).take();
}

E2Message decode_e2(ByteView wire) {
  try {
    ByteReader r(wire);
    E2Message msg;
    const uint8_t kind = r.u8();
    if (kind < 1 || kind > 7) throw Error(Errc::kDecodeError, "E2 kind " + std::to_string(kind));
    msg.kind = static_cast<Kind>(kind);
    msg.txn_id = r.u32();
    const uint16_t count = r.u16();
    for (uint16_t i = 0; i < count; ++i) {
      const ByteView key = r.bytes(r.u8());
      const ByteView val = r.bytes(r.u16());
      msg.body.push_back({std::string(key.begin(), key.end()), Bytes(val.begin(), val.end())});
    }
    if (!r.empty()) throw Error(Errc::kDecodeError, "trailing bytes after E2 message");
    return msg;
  } catch (const Error& e) {
    if (e.code() == Errc::kDecodeError) throw;
    throw Error(Errc::kDecodeError, std::string("E2 message: ") + e.what());
  }
}

}  // namespace pqe2::e2
