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

#include "pqe2/esp/esp.hpp"

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <limits>
#include <random>
#include <set>

#include "pqe2/common/error.hpp"
#include "pqe2/kem/drbg.hpp"

namespace pqe2::esp {
namespace {

ike::ChildSaKeys make_keys(std::string_view label) {
  auto rng = kem::SeedableRandomSource::from_label(label);
  ike::ChildSaKeys k;
  k.spi_in = 0xc0ffee01;
  k.spi_out = 0xc0ffee01;
  rng.fill(k.key_out);
  rng.fill(k.salt_out);
  k.key_in = k.key_out;
  k.salt_in = k.salt_out;
  return k;
}

Errc open_error(TunnelEndpoint& t, const EspPacket& p) {
  try {
    esp_open(t, p);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIoError;
}

// Independent AES-256-GCM computation straight through EVP, with the nonce
// and associated data assembled byte by byte.
Bytes evp_gcm(ByteView key, uint32_t spi, uint32_t seq, ByteView salt, ByteView pt) {
  uint8_t iv[12] = {salt[0], salt[1], salt[2], salt[3], 0, 0, 0, 0,
                    uint8_t(seq >> 24), uint8_t(seq >> 16), uint8_t(seq >> 8), uint8_t(seq)};
  uint8_t aad[8] = {uint8_t(spi >> 24), uint8_t(spi >> 16), uint8_t(spi >> 8), uint8_t(spi),
                    uint8_t(seq >> 24), uint8_t(seq >> 16), uint8_t(seq >> 8), uint8_t(seq)};
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  Bytes out(pt.size() + 16);
  int len = 0;
  EVP_EncryptInit_ex(ctx, EVP_aes_256_gcm(), nullptr, key.data(), iv);
  EVP_EncryptUpdate(ctx, nullptr, &len, aad, sizeof aad);
  if (!pt.empty()) EVP_EncryptUpdate(ctx, out.data(), &len, pt.data(), static_cast<int>(pt.size()));
  EVP_EncryptFinal_ex(ctx, out.data() + pt.size(), &len);
  EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_GET_TAG, 16, out.data() + pt.size());
  EVP_CIPHER_CTX_free(ctx);
  return out;
}

TEST(EspTest, WireLayoutAndOverhead) {
  TunnelEndpoint t(make_keys("layout"));
  const Bytes inner(37, 0x11);
  const EspPacket p = esp_seal(t, inner);
  const Bytes wire = encode(p);
  EXPECT_EQ(wire.size(), 4 + 4 + inner.size() + 16);
  EXPECT_EQ(wire.size() - inner.size(), kEspOverhead);
  EXPECT_EQ(to_hex(ByteView(wire).first(8)), "c0ffee0100000001");
  const EspPacket back = decode_esp(wire);
  EXPECT_EQ(back.spi, p.spi);
  EXPECT_EQ(back.seq, 1u);
  EXPECT_EQ(back.ciphertext, p.ciphertext);
  EXPECT_THROW(decode_esp(Bytes(23)), Error);
}

TEST(EspTest, MatchesIndependentGcm) {
  const ike::ChildSaKeys k = make_keys("evp");
  TunnelEndpoint t(k);
  for (size_t n : {0u, 1u, 16u, 64u, 1500u}) {
    const Bytes inner(n, static_cast<uint8_t>(n));
    const EspPacket p = esp_seal(t, inner);
    EXPECT_EQ(p.ciphertext, evp_gcm(k.key_out, p.spi, p.seq, k.salt_out, inner)) << n;
    EXPECT_EQ(to_hex(ByteView(p.nonce).first(4)), to_hex(k.salt_out));
  }
}

TEST(EspTest, SequenceNumbersIncrease) {
  TunnelEndpoint t(make_keys("seq"));
  for (uint32_t i = 1; i <= 5; ++i) EXPECT_EQ(esp_seal(t, {}).seq, i);
}

TEST(EspTest, RoundTripEverySizeUpTo9000) {
  const ike::ChildSaKeys k = make_keys("sizes");
  TunnelEndpoint tx(k), rx(k);
  auto rng = kem::SeedableRandomSource::from_label("sizes/data");
  const Bytes pool = rng.bytes(9000);
  for (size_t n = 0; n <= 9000; ++n) {
    const ByteView inner = ByteView(pool).first(n);
    const Bytes out = esp_open(rx, decode_esp(encode(esp_seal(tx, inner))));
    ASSERT_TRUE(std::equal(out.begin(), out.end(), inner.begin(), inner.end())) << n;
  }
}

TEST(EspTest, SequenceExhaustion) {
  TunnelEndpoint t(make_keys("exhaust"));
  t.last_seq = std::numeric_limits<uint32_t>::max() - 1;
  EXPECT_EQ(esp_seal(t, {}).seq, std::numeric_limits<uint32_t>::max());
  try {
    esp_seal(t, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSequenceExhausted);
  }
  EXPECT_TRUE(t.failed);
}

TEST(EspTest, UnknownSpi) {
  ike::ChildSaKeys k = make_keys("spi");
  TunnelEndpoint tx(k);
  k.spi_in = 7;
  TunnelEndpoint rx(k);
  EXPECT_EQ(open_error(rx, esp_seal(tx, Bytes(3))), Errc::kUnknownSpi);
}

TEST(EspTest, EverySingleBitFlipIsRejected) {
  const ike::ChildSaKeys k = make_keys("tamper");
  TunnelEndpoint tx(k);
  const EspPacket good = esp_seal(tx, Bytes(64, 0xa5));
  const Bytes wire = encode(good);
  ASSERT_EQ(wire.size(), 8u + 64u + 16u);
  for (size_t bit = 32; bit < wire.size() * 8; ++bit) {
    Bytes bad = wire;
    bad[bit / 8] ^= static_cast<uint8_t>(0x80 >> (bit % 8));
    TunnelEndpoint rx(k);
    const Errc err = open_error(rx, decode_esp(bad));
    if (bit < 64 && decode_esp(bad).seq == 0) {
      ASSERT_EQ(err, Errc::kReplayDetected) << "bit " << bit;
    } else {
      ASSERT_EQ(err, Errc::kAuthFailed) << "bit " << bit;
    }
    EXPECT_EQ(rx.window.highest(), 0u);
  }
  TunnelEndpoint rx(k);
  EXPECT_EQ(esp_open(rx, decode_esp(wire)), Bytes(64, 0xa5));
}

TEST(EspTest, ForgeryDoesNotMoveTheWindow) {
  const ike::ChildSaKeys k = make_keys("forge");
  TunnelEndpoint tx(k), rx(k);
  std::vector<EspPacket> pkts;
  for (int i = 0; i < 5; ++i) pkts.push_back(esp_seal(tx, Bytes(8, 1)));
  EspPacket forged = pkts[0];
  forged.seq = 1000;
  EXPECT_EQ(open_error(rx, forged), Errc::kAuthFailed);
  for (const auto& p : pkts) EXPECT_NO_THROW(esp_open(rx, p));
}

TEST(EspTest, ReplayOfSamePacket) {
  const ike::ChildSaKeys k = make_keys("replay");
  TunnelEndpoint tx(k), rx(k);
  const EspPacket p = esp_seal(tx, Bytes(1, 9));
  EXPECT_NO_THROW(esp_open(rx, p));
  EXPECT_EQ(open_error(rx, p), Errc::kReplayDetected);
}

// Reference model: accept iff never accepted and within 64 of the highest.
struct WindowModel {
  std::set<uint32_t> seen;
  uint32_t highest = 0;
  bool offer(uint32_t seq) {
    if (seq == 0 || seen.count(seq) || (seq <= highest && highest - seq >= 64)) return false;
    seen.insert(seq);
    highest = std::max(highest, seq);
    return true;
  }
};

TEST(ReplayWindowTest, EdgesAroundTheHighestSeq) {
  ReplayWindow w;
  w.accept(100);
  EXPECT_FALSE(w.check(36));  // 64 behind
  EXPECT_TRUE(w.check(37));   // 63 behind
  EXPECT_FALSE(w.check(100));
  EXPECT_TRUE(w.check(101));
  EXPECT_FALSE(w.check(0));
  w.accept(37);
  EXPECT_FALSE(w.check(37));
  w.accept(164);  // slides 37 out
  EXPECT_FALSE(w.check(100));
  EXPECT_TRUE(w.check(101));
  w.accept(10'000);
  EXPECT_FALSE(w.check(164));
  EXPECT_TRUE(w.check(9'937));
  EXPECT_FALSE(w.check(9'936));
}

// Every ordered pair of seqs around a 64-wide edge, each offered twice.
TEST(ReplayWindowTest, ExhaustivePairsAcrossTheEdge) {
  for (uint32_t base : {1u, 64u, 65u, 200u}) {
    for (uint32_t a = base; a < base + 140; ++a) {
      for (uint32_t b = base; b < base + 140; ++b) {
        ReplayWindow w;
        WindowModel m;
        for (uint32_t s : {a, b, a, b}) {
          const bool ok = w.check(s);
          ASSERT_EQ(ok, m.offer(s)) << base << " " << a << " " << b;
          if (ok) w.accept(s);
        }
      }
    }
  }
}

TEST(ReplayWindowTest, RandomAdversarialSchedules) {
  const ike::ChildSaKeys k = make_keys("schedule");
  for (uint32_t trial = 0; trial < 20; ++trial) {
    TunnelEndpoint tx(k), rx(k);
    std::vector<EspPacket> pkts;
    for (int i = 0; i < 300; ++i) pkts.push_back(esp_seal(tx, Bytes(4, static_cast<uint8_t>(i))));
    std::mt19937 gen(trial);
    std::vector<size_t> order;
    for (size_t i = 0; i < 900; ++i) {
      // mostly forward with local reordering and re-delivery
      const size_t centre = std::min<size_t>(i / 3, 299);
      std::uniform_int_distribution<int> d(-80, 20);
      order.push_back(static_cast<size_t>(std::clamp<int>(static_cast<int>(centre) + d(gen), 0, 299)));
    }
    WindowModel m;
    std::vector<int> accepted(300, 0);
    for (size_t idx : order) {
      const bool expect = m.offer(pkts[idx].seq);
      const Errc err = open_error(rx, pkts[idx]);
      if (expect) {
        ASSERT_EQ(err, Errc::kIoError) << "seq " << pkts[idx].seq;
        ++accepted[idx];
      } else {
        ASSERT_EQ(err, Errc::kReplayDetected) << "seq " << pkts[idx].seq;
      }
    }
    for (int c : accepted) ASSERT_LE(c, 1);
  }
}

TEST(InnerPacketTest, RoundTrip) {
  const InnerPacket p{0x0a000a01, 0xac100222, 36421, Bytes{1, 2, 3}};
  const Bytes wire = encode(p);
  EXPECT_EQ(to_hex(wire), "0a000a01ac1002228e45010203");
  EXPECT_EQ(decode_inner(wire), p);
  EXPECT_THROW(decode_inner(Bytes(9)), Error);
}

}  // namespace
}  // namespace pqe2::esp
