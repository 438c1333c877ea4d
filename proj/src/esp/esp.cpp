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

#include <limits>

#include "pqe2/common/error.hpp"
#include "pqe2/crypto/primitives.hpp"

namespace pqe2::esp {

namespace {

std::array<uint8_t, 12> make_nonce(const std::array<uint8_t, ike::kAeadSaltBytes>& salt, uint32_t seq) {
  std::array<uint8_t, 12> n{};
  std::copy(salt.begin(), salt.end(), n.begin());
  store_be64(n.data() + 4, seq);
  return n;
}

std::array<uint8_t, 8> make_aad(uint32_t spi, uint32_t seq) {
  std::array<uint8_t, 8> a{};
  store_be32(a.data(), spi);
  store_be32(a.data() + 4, seq);
  return a;
}

}  // namespace

Bytes encode(const EspPacket& pkt) {
  ByteWriter w;
  w.u32(pkt.spi);
  w.u32(pkt.seq);
  w.bytes(pkt.ciphertext);
  return std::move(w).take();
}

EspPacket decode_esp(ByteView wire) {
  if (wire.size() < kEspOverhead) throw Error(Errc::kDecodeError, "ESP packet shorter than header and tag");
  ByteReader r(wire);
  EspPacket pkt;
  pkt.spi = r.u32();
  pkt.seq = r.u32();
  const ByteView rest = r.rest();
  pkt.ciphertext.assign(rest.begin(), rest.end());
  return pkt;
}

bool ReplayWindow::check(uint32_t seq) const {
  if (seq == 0) return false;
  if (seq > highest_) return true;
  const uint32_t age = highest_ - seq;
  if (age >= kReplayWindowSize) return false;
  return (bitmap_ >> age & 1) == 0;
}

void ReplayWindow::accept(uint32_t seq) {
  if (seq > highest_) {
    const uint32_t shift = seq - highest_;
    bitmap_ = shift >= kReplayWindowSize ? 0 : bitmap_ << shift;
    bitmap_ |= 1;
    highest_ = seq;
    return;
  }
  bitmap_ |= uint64_t{1} << (highest_ - seq);
}

EspPacket esp_seal(TunnelEndpoint& tunnel, ByteView inner) {
  if (tunnel.failed || tunnel.last_seq == std::numeric_limits<uint32_t>::max()) {
    tunnel.failed = true;
    throw Error(Errc::kSequenceExhausted, "ESP sequence space used up; no rekey");
  }
  EspPacket pkt;
  pkt.spi = tunnel.keys.spi_out;
  pkt.seq = ++tunnel.last_seq;
  pkt.nonce = make_nonce(tunnel.keys.salt_out, pkt.seq);
  const auto aad = make_aad(pkt.spi, pkt.seq);
  pkt.ciphertext = crypto::aes256gcm_seal(tunnel.keys.key_out, pkt.nonce, aad, inner);
  return pkt;
}

Bytes esp_open(const ike::ChildSaKeys& keys, const EspPacket& pkt, ReplayWindow& win) {
  if (pkt.spi != keys.spi_in) throw Error(Errc::kUnknownSpi, "SPI " + std::to_string(pkt.spi));
  if (!win.check(pkt.seq)) throw Error(Errc::kReplayDetected, "seq " + std::to_string(pkt.seq));
  const auto nonce = make_nonce(keys.salt_in, pkt.seq);
  const auto aad = make_aad(pkt.spi, pkt.seq);
  auto inner = crypto::aes256gcm_open(keys.key_in, nonce, aad, pkt.ciphertext);
  if (!inner) throw Error(Errc::kAuthFailed, "ESP tag mismatch at seq " + std::to_string(pkt.seq));
  win.accept(pkt.seq);
  return std::move(*inner);
}

Bytes encode(const InnerPacket& pkt) {
  ByteWriter w;
  w.u32(pkt.src);
  w.u32(pkt.dst);
  w.u16(pkt.port);
  w.bytes(pkt.payload);
  return std::move(w).take();
}

InnerPacket decode_inner(ByteView wire) {
  if (wire.size() < kInnerHeaderBytes) throw Error(Errc::kDecodeError, "inner packet shorter than its header");
  ByteReader r(wire);
  InnerPacket pkt;
  pkt.src = r.u32();
  pkt.dst = r.u32();
  pkt.port = r.u16();
  const ByteView rest = r.rest();
  pkt.payload.assign(rest.begin(), rest.end());
  return pkt;
}

}  // namespace pqe2::esp
