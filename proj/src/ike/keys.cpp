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

#include <algorithm>

#include "pqe2/crypto/primitives.hpp"

namespace pqe2::ike {

namespace {

Bytes take(ByteView src, size_t& pos, size_t n) {
  Bytes out(src.begin() + pos, src.begin() + pos + n);
  pos += n;
  return out;
}

}  // namespace

Bytes prf(Prf alg, ByteView key, ByteView data) {
  switch (alg) {
    case Prf::kHmacSha256: {
      const auto mac = crypto::hmac_sha256(key, data);
      return Bytes(mac.begin(), mac.end());
    }
  }
  throw Error(Errc::kUnknownToken, "prf id " + std::to_string(static_cast<int>(alg)));
}

Bytes prf_plus(Prf alg, ByteView key, ByteView seed, size_t n) {
  if (n > 255 * kPrfOutputBytes) {
    throw Error(Errc::kLengthOverflow, "prf+ output " + std::to_string(n) + " exceeds 255 blocks");
  }
  Bytes out;
  out.reserve(n);
  Bytes t;
  for (unsigned k = 1; out.size() < n; ++k) {
    t = prf(alg, key, concat(t, seed, Bytes{static_cast<uint8_t>(k)}));
    const size_t take_n = std::min(t.size(), n - out.size());
    out.insert(out.end(), t.begin(), t.begin() + take_n);
  }
  return out;
}

KeySizes key_sizes(const Proposal& suite) {
  (void)suite;  // one AEAD and one PRF are defined
  return {kPrfOutputBytes, 0, kAeadKeyBytes + kAeadSaltBytes, kPrfOutputBytes};
}

KeyMaterial derive_keys(Prf alg, ByteView shared_secret, ByteView ni, ByteView nr, uint64_t spi_i, uint64_t spi_r) {
  return derive_keys(Proposal{Aead::kAes256Gcm16, alg, kem::KemParamSet::kEcdhX25519}, shared_secret, ni, nr, spi_i,
                     spi_r);
}

KeyMaterial derive_keys(const Proposal& suite, ByteView shared_secret, ByteView ni, ByteView nr, uint64_t spi_i,
                        uint64_t spi_r) {
  KeyMaterial km;
  km.skeyseed = prf(suite.prf, concat(ni, nr), shared_secret);
  uint8_t spis[16];
  store_be64(spis, spi_i);
  store_be64(spis + 8, spi_r);
  const KeySizes sz = key_sizes(suite);
  const Bytes stream = prf_plus(suite.prf, km.skeyseed, concat(ni, nr, ByteView(spis, 16)), sz.total());
  size_t pos = 0;
  km.sk_d = take(stream, pos, sz.d);
  km.sk_ai = take(stream, pos, sz.a);
  km.sk_ar = take(stream, pos, sz.a);
  km.sk_ei = take(stream, pos, sz.e);
  km.sk_er = take(stream, pos, sz.e);
  km.sk_pi = take(stream, pos, sz.p);
  km.sk_pr = take(stream, pos, sz.p);
  return km;
}

ChildSaKeys derive_child_keys(Prf alg, ByteView sk_d, ByteView ni, ByteView nr, uint32_t spi_i, uint32_t spi_r,
                              bool initiator) {
  constexpr size_t kDir = kAeadKeyBytes + kAeadSaltBytes;
  const Bytes keymat = prf_plus(alg, sk_d, concat(ni, nr), 2 * kDir);
  const uint8_t* i_to_r = keymat.data();
  const uint8_t* r_to_i = keymat.data() + kDir;
  const uint8_t* out_dir = initiator ? i_to_r : r_to_i;
  const uint8_t* in_dir = initiator ? r_to_i : i_to_r;
  ChildSaKeys k;
  k.spi_in = initiator ? spi_i : spi_r;
  k.spi_out = initiator ? spi_r : spi_i;
  std::copy_n(out_dir, kAeadKeyBytes, k.key_out.begin());
  std::copy_n(out_dir + kAeadKeyBytes, kAeadSaltBytes, k.salt_out.begin());
  std::copy_n(in_dir, kAeadKeyBytes, k.key_in.begin());
  std::copy_n(in_dir + kAeadKeyBytes, kAeadSaltBytes, k.salt_in.begin());
  return k;
}

}  // namespace pqe2::ike
