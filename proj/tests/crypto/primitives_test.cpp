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

#include "pqe2/crypto/primitives.hpp"

#include <gtest/gtest.h>

#include "pqe2/kem/kat.hpp"

namespace pqe2::crypto {
namespace {

std::filesystem::path kat_path(const char* name) { return std::filesystem::path(PQE2_KAT_DIR) / name; }

template <size_t N>
Bytes as_bytes(const std::array<uint8_t, N>& a) {
  return Bytes(a.begin(), a.end());
}

TEST(Sha256Test, Abc) {
  EXPECT_EQ(to_hex(as_bytes(sha256(to_bytes("abc")))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(HmacSha256Test, Rfc4231) {
  const auto records = kem::parse_kat_file(kat_path("hmac_sha256_rfc4231.txt"));
  ASSERT_GE(records.size(), 6u);
  for (const auto& rec : records) {
    const Bytes md = rec.hex("md");
    const Bytes got = as_bytes(hmac_sha256(rec.hex("key"), rec.hex("msg")));
    // the truncated-output case publishes only a prefix
    EXPECT_EQ(Bytes(got.begin(), got.begin() + md.size()), md) << "line " << rec.line;
  }
}

TEST(AesGcmTest, CavsEncrypt) {
  const auto records = kem::parse_kat_file(kat_path("gcmEncryptExtIV256_iv96.rsp"));
  ASSERT_FALSE(records.empty());
  for (const auto& rec : records) {
    const Bytes sealed = aes256gcm_seal(rec.hex("key"), rec.hex("iv"), rec.hex("aad"), rec.hex("pt"));
    EXPECT_EQ(sealed, concat(rec.hex("ct"), rec.hex("tag"))) << "line " << rec.line;
  }
}

TEST(AesGcmTest, CavsDecryptIncludingForgeries) {
  const auto records = kem::parse_kat_file(kat_path("gcmDecrypt256_iv96.rsp"));
  size_t forgeries = 0;
  for (const auto& rec : records) {
    const auto opened =
        aes256gcm_open(rec.hex("key"), rec.hex("iv"), rec.hex("aad"), concat(rec.hex("ct"), rec.hex("tag")));
    if (rec.flagged("FAIL")) {
      ++forgeries;
      EXPECT_FALSE(opened.has_value()) << "line " << rec.line;
    } else {
      ASSERT_TRUE(opened.has_value()) << "line " << rec.line;
      EXPECT_EQ(*opened, rec.hex("pt")) << "line " << rec.line;
    }
  }
  EXPECT_GT(forgeries, 0u);
}

TEST(X25519Test, Rfc7748) {
  const auto records = kem::parse_kat_file(kat_path("x25519_rfc7748.txt"));
  ASSERT_GE(records.size(), 2u);
  for (const auto& rec : records) {
    EXPECT_EQ(as_bytes(x25519_shared(rec.hex("input_scalar"), rec.hex("input_u"))), rec.hex("output_u"));
  }
}

TEST(X25519Test, ZeroPointRejected) {
  const Bytes scalar(32, 0x42);
  EXPECT_THROW(x25519_shared(scalar, Bytes(32, 0)), Error);
}

}  // namespace
}  // namespace pqe2::crypto
