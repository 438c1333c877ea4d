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

#pragma once

// IKEv2 key schedule:
//
//   SKEYSEED = prf(Ni | Nr, shared secret)
//   {SK_d | SK_ai | SK_ar | SK_ei | SK_er | SK_pi | SK_pr}
//       = prf+(SKEYSEED, Ni | Nr | SPIi | SPIr)
//
// With an AEAD suite SK_ai/SK_ar are empty and SK_e* carry a 32-byte key
// followed by a 4-byte salt.

#include <array>

#include "pqe2/common/bytes.hpp"
#include "pqe2/ike/proposal.hpp"

namespace pqe2::ike {

constexpr size_t kNonceBytes = 32;
constexpr size_t kPrfOutputBytes = 32;
constexpr size_t kAeadKeyBytes = 32;
constexpr size_t kAeadSaltBytes = 4;

Bytes prf(Prf alg, ByteView key, ByteView data);

/// T1 = prf(K, S | 0x01), Tk = prf(K, Tk-1 | S | k); first n bytes of T1 | T2 | ...
Bytes prf_plus(Prf alg, ByteView key, ByteView seed, size_t n);

struct KeyMaterial {
  Bytes skeyseed;
  Bytes sk_d;
  Bytes sk_ai;
  Bytes sk_ar;
  Bytes sk_ei;
  Bytes sk_er;
  Bytes sk_pi;
  Bytes sk_pr;

  friend bool operator==(const KeyMaterial&, const KeyMaterial&) = default;
};

struct KeySizes {
  size_t d;
  size_t a;
  size_t e;
  size_t p;

  size_t total() const { return d + 2 * a + 2 * e + 2 * p; }
};

KeySizes key_sizes(const Proposal& suite);

KeyMaterial derive_keys(Prf alg, ByteView shared_secret, ByteView ni, ByteView nr, uint64_t spi_i, uint64_t spi_r);
KeyMaterial derive_keys(const Proposal& suite, ByteView shared_secret, ByteView ni, ByteView nr, uint64_t spi_i,
                        uint64_t spi_r);

struct ChildSaKeys {
  uint32_t spi_in = 0;
  uint32_t spi_out = 0;
  std::array<uint8_t, kAeadKeyBytes> key_in{};
  std::array<uint8_t, kAeadKeyBytes> key_out{};
  std::array<uint8_t, kAeadSaltBytes> salt_in{};
  std::array<uint8_t, kAeadSaltBytes> salt_out{};

  friend bool operator==(const ChildSaKeys&, const ChildSaKeys&) = default;
};

/// KEYMAT = prf+(SK_d, Ni | Nr): the first key+salt protects
/// initiator-to-responder traffic, the second the reverse direction.
/// `spi_i` / `spi_r` are the inbound SPIs chosen by each side.
ChildSaKeys derive_child_keys(Prf alg, ByteView sk_d, ByteView ni, ByteView nr, uint32_t spi_i, uint32_t spi_r,
                              bool initiator);

}  // namespace pqe2::ike
