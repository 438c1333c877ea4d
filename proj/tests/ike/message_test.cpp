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

#include <gtest/gtest.h>

namespace pqe2::ike {
namespace {

TEST(MessageTest, BitExactFraming) {
  IkeMessage m;
  m.exchange = Exchange::kAuth;
  m.role = MsgRole::kResponse;
  m.msg_id = 0x01020304;
  m.payloads = {{PayloadTag::kNonce, {0xaa, 0xbb}}, {PayloadTag::kAuth, {}}};
  EXPECT_EQ(to_hex(encode(m)),
            "0201"        // exchange, role
            "01020304"    // msg_id
            "0000"        // unfragmented
            "0002"        // payload count
            "0300000002aabb"
            "0400000000");
  EXPECT_EQ(m.wire_size(), encode(m).size());
  EXPECT_EQ(decode(encode(m)), m);
}

TEST(MessageTest, FragmentInfoRoundTrip) {
  IkeMessage m;
  m.fragment_info = FragmentInfo{2, 3};
  m.payloads = {{PayloadTag::kFragment, Bytes(10, 1)}};
  const Bytes wire = encode(m);
  EXPECT_EQ(wire[6], 2);
  EXPECT_EQ(wire[7], 3);
  EXPECT_EQ(decode(wire), m);
}

TEST(MessageTest, DecodeRejectsMalformed) {
  EXPECT_THROW(decode(from_hex("0100")), Error);
  EXPECT_THROW(decode(from_hex("0900000000000000" "0000")), Error);            // exchange
  EXPECT_THROW(decode(from_hex("0100000000000400" "0000")), Error);            // index > total
  EXPECT_THROW(decode(from_hex("0100000000000000" "0001" "0900000000")), Error);  // tag
  EXPECT_THROW(decode(from_hex("0100000000000000" "0001" "0100000005aa")), Error);  // short body
  EXPECT_THROW(decode(from_hex("0100000000000000" "0000" "ff")), Error);          // trailing
}

TEST(MessageTest, PayloadLookup) {
  IkeMessage m;
  m.payloads = {{PayloadTag::kKe, {1}}};
  EXPECT_TRUE(m.has(PayloadTag::kKe));
  EXPECT_FALSE(m.has(PayloadTag::kNonce));
  EXPECT_EQ(m.payload(PayloadTag::kKe), Bytes{1});
  EXPECT_THROW(m.payload(PayloadTag::kNonce), Error);
}

}  // namespace
}  // namespace pqe2::ike
