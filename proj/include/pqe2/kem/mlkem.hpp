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

// ML-KEM (FIPS 203) deterministic core. Randomness is supplied by the
// caller, which is what the known-answer vectors exercise; the randomized
// wrappers live in kem.hpp.

#include <array>
#include <cstdint>

#include "pqe2/common/bytes.hpp"

namespace pqe2::kem::mlkem {

enum class Level { k512, k768, k1024 };

struct Params {
  int k;
  int eta1;
  int eta2;
  int du;
  int dv;
};

constexpr Params params(Level level) {
  switch (level) {
    case Level::k512: return {2, 3, 2, 10, 4};
    case Level::k768: return {3, 2, 2, 10, 4};
    case Level::k1024: return {4, 2, 2, 11, 5};
  }
  return {0, 0, 0, 0, 0};
}

constexpr size_t ek_bytes(Level level) { return 384 * params(level).k + 32; }
constexpr size_t dk_bytes(Level level) { return 768 * params(level).k + 96; }
constexpr size_t ct_bytes(Level level) {
  const Params p = params(level);
  return 32 * (p.du * p.k + p.dv);
}
constexpr size_t kSharedSecretBytes = 32;
constexpr size_t kSeedBytes = 32;

using SharedSecret = std::array<uint8_t, kSharedSecretBytes>;

struct KeyPair {
  Bytes ek;
  Bytes dk;
};

struct Encapsulation {
  Bytes ct;
  SharedSecret ss;
};

/// ML-KEM.KeyGen_internal(d, z).
KeyPair keygen_internal(Level level, ByteView d, ByteView z);

/// ML-KEM.Encaps_internal(ek, m). Performs the encapsulation-key modulus
/// check first; throws kMalformedKey when it fails.
Encapsulation encaps_internal(Level level, ByteView ek, ByteView m);

/// ML-KEM.Decaps_internal(dk, c) with implicit rejection. Throws
/// kMalformedInput on length violations or a failed decapsulation-key
/// hash check; never fails on a well-formed but tampered ciphertext.
SharedSecret decaps(Level level, ByteView dk, ByteView ct);

/// Modulus check: every 12-bit coefficient of the key is reduced mod q.
bool encapsulation_key_valid(Level level, ByteView ek);
/// Hash check: the embedded H(ek) matches the embedded ek.
bool decapsulation_key_valid(Level level, ByteView dk);

}  // namespace pqe2::kem::mlkem
