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

// Symmetric primitives and X25519, backed by OpenSSL libcrypto.

#include <array>
#include <optional>

#include "pqe2/common/bytes.hpp"

namespace pqe2::crypto {

constexpr size_t kSha256Bytes = 32;
constexpr size_t kGcmKeyBytes = 32;
constexpr size_t kGcmNonceBytes = 12;
constexpr size_t kGcmTagBytes = 16;
constexpr size_t kX25519Bytes = 32;

std::array<uint8_t, 32> sha256(ByteView data);
std::array<uint8_t, 32> hmac_sha256(ByteView key, ByteView data);

/// AES-256-GCM. Returns ciphertext || 16-byte tag.
Bytes aes256gcm_seal(ByteView key, ByteView nonce, ByteView aad, ByteView plaintext);

/// Verifies the trailing tag; std::nullopt on authentication failure.
std::optional<Bytes> aes256gcm_open(ByteView key, ByteView nonce, ByteView aad,
                                    ByteView ciphertext_and_tag);

/// Public key for a 32-byte private scalar (clamping is applied by the curve).
std::array<uint8_t, 32> x25519_public(ByteView private_key);

/// Raw shared point. Throws kMalformedKey when the result is the all-zero
/// point (low-order peer key).
std::array<uint8_t, 32> x25519_shared(ByteView private_key, ByteView peer_public);

}  // namespace pqe2::crypto
