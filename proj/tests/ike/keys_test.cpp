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

#include "pqe2/ike/keys.hpp"

#include <gtest/gtest.h>

#include "pqe2/kem/drbg.hpp"
#include "support/oracles.hpp"

namespace pqe2::ike {
namespace {

using testing::hmac_oracle;
using testing::prf_plus_oracle;

TEST(PrfPlusTest, EmptyOutput) { EXPECT_TRUE(prf_plus(Prf::kHmacSha256, Bytes(32, 1), Bytes(5, 2), 0).empty()); }

TEST(PrfPlusTest, FirstBlockIsT1) {
  const Bytes key(32, 0x0b), seed = to_bytes("seed");
  EXPECT_EQ(prf_plus(Prf::kHmacSha256, key, seed, 32), hmac_oracle(key, concat(seed, Bytes{0x01})));
}

TEST(PrfPlusTest, MatchesOracle) {
  auto rng = kem::SeedableRandomSource::from_label("prf-plus");
  const Bytes key = rng.bytes(32), seed = rng.bytes(80);
  for (size_t n : {1, 31, 33, 64, 100, 255 * 32}) {
    EXPECT_EQ(prf_plus(Prf::kHmacSha256, key, seed, n), prf_plus_oracle(key, seed, n)) << n;
  }
}

TEST(PrfPlusTest, LengthOverflow) {
  try {
    prf_plus(Prf::kHmacSha256, Bytes(32), Bytes(1), 255 * 32 + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kLengthOverflow);
  }
}

TEST(DeriveKeysTest, MatchesOracle) {
  auto rng = kem::SeedableRandomSource::from_label("derive-keys");
  const Bytes ss = rng.bytes(32), ni = rng.bytes(32), nr = rng.bytes(32);
  const uint64_t spi_i = 0x0102030405060708ULL, spi_r = 0xf0e0d0c0b0a09080ULL;
  const KeyMaterial km = derive_keys(Prf::kHmacSha256, ss, ni, nr, spi_i, spi_r);

  const Bytes skeyseed = hmac_oracle(concat(ni, nr), ss);
  const Bytes seed = concat(ni, nr, from_hex("0102030405060708f0e0d0c0b0a09080"));
  const Bytes stream = prf_plus_oracle(skeyseed, seed, 32 + 36 + 36 + 32 + 32);
  auto slice = [&](size_t off, size_t n) { return Bytes(stream.begin() + off, stream.begin() + off + n); };
  EXPECT_EQ(km.skeyseed, skeyseed);
  EXPECT_EQ(km.sk_d, slice(0, 32));
  EXPECT_TRUE(km.sk_ai.empty());
  EXPECT_TRUE(km.sk_ar.empty());
  EXPECT_EQ(km.sk_ei, slice(32, 36));
  EXPECT_EQ(km.sk_er, slice(68, 36));
  EXPECT_EQ(km.sk_pi, slice(104, 32));
  EXPECT_EQ(km.sk_pr, slice(136, 32));
}

TEST(DeriveKeysTest, NonceBitChangesEveryKey) {
  auto rng = kem::SeedableRandomSource::from_label("avalanche");
  const Bytes ss = rng.bytes(32), ni = rng.bytes(32), nr = rng.bytes(32);
  Bytes ni2 = ni;
  ni2[5] ^= 0x10;
  const KeyMaterial a = derive_keys(Prf::kHmacSha256, ss, ni, nr, 1, 2);
  const KeyMaterial b = derive_keys(Prf::kHmacSha256, ss, ni2, nr, 1, 2);
  EXPECT_NE(a.skeyseed, b.skeyseed);
  EXPECT_NE(a.sk_d, b.sk_d);
  EXPECT_NE(a.sk_ei, b.sk_ei);
  EXPECT_NE(a.sk_er, b.sk_er);
  EXPECT_NE(a.sk_pi, b.sk_pi);
  EXPECT_NE(a.sk_pr, b.sk_pr);
  EXPECT_EQ(a, derive_keys(Prf::kHmacSha256, ss, ni, nr, 1, 2));
}

TEST(ChildKeysTest, MirrorImageAssignment) {
  auto rng = kem::SeedableRandomSource::from_label("child");
  const Bytes sk_d = rng.bytes(32), ni = rng.bytes(32), nr = rng.bytes(32);
  const ChildSaKeys i = derive_child_keys(Prf::kHmacSha256, sk_d, ni, nr, 0x1111, 0x2222, true);
  const ChildSaKeys r = derive_child_keys(Prf::kHmacSha256, sk_d, ni, nr, 0x1111, 0x2222, false);
  EXPECT_EQ(i.spi_in, 0x1111u);
  EXPECT_EQ(i.spi_out, 0x2222u);
  EXPECT_EQ(i.spi_in, r.spi_out);
  EXPECT_EQ(i.spi_out, r.spi_in);
  EXPECT_EQ(i.key_out, r.key_in);
  EXPECT_EQ(i.key_in, r.key_out);
  EXPECT_EQ(i.salt_out, r.salt_in);
  EXPECT_EQ(i.salt_in, r.salt_out);
  EXPECT_NE(i.key_in, i.key_out);

  const Bytes keymat = testing::prf_plus_oracle(sk_d, concat(ni, nr), 72);
  EXPECT_EQ(Bytes(i.key_out.begin(), i.key_out.end()), Bytes(keymat.begin(), keymat.begin() + 32));
  EXPECT_EQ(Bytes(i.salt_out.begin(), i.salt_out.end()), Bytes(keymat.begin() + 32, keymat.begin() + 36));
  EXPECT_EQ(Bytes(r.key_out.begin(), r.key_out.end()), Bytes(keymat.begin() + 36, keymat.begin() + 68));
}

}  // namespace
}  // namespace pqe2::ike
