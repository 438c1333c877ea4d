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

#include "pqe2/common/bytes.hpp"

#include <gtest/gtest.h>

namespace pqe2 {
namespace {

TEST(BytesTest, HexRoundTrip) {
  const Bytes b = {0x00, 0x01, 0xab, 0xff};
  EXPECT_EQ(to_hex(b), "0001abff");
  EXPECT_EQ(from_hex("0001ABff"), b);
  EXPECT_TRUE(from_hex("").empty());
}

TEST(BytesTest, HexRejectsGarbage) {
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

TEST(BytesTest, WriterReaderBigEndian) {
  ByteWriter w;
  w.u8(0x12);
  w.u16(0x3456);
  w.u32(0x789abcde);
  w.u64(0x0102030405060708ULL);
  const Bytes wire = std::move(w).take();
  EXPECT_EQ(to_hex(wire), "123456789abcde0102030405060708");

  ByteReader r(wire);
  EXPECT_EQ(r.u8(), 0x12);
  EXPECT_EQ(r.u16(), 0x3456);
  EXPECT_EQ(r.u32(), 0x789abcdeu);
  EXPECT_EQ(r.u64(), 0x0102030405060708ULL);
  EXPECT_TRUE(r.empty());
  try {
    r.u8();
    FAIL() << "read past end";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDecodeError);
  }
}

TEST(BytesTest, ConstantTimeEqual) {
  const Bytes a = {1, 2, 3};
  const Bytes b = {1, 2, 4};
  EXPECT_TRUE(constant_time_equal(a, a));
  EXPECT_FALSE(constant_time_equal(a, b));
  EXPECT_FALSE(constant_time_equal(a, Bytes{1, 2}));
}

TEST(BytesTest, Concat) {
  EXPECT_EQ(concat(Bytes{1}, Bytes{}, Bytes{2, 3}), (Bytes{1, 2, 3}));
}

}  // namespace
}  // namespace pqe2
