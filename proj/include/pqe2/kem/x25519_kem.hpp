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

// Ephemeral-static X25519 Diffie-Hellman presented as a KEM:
//   encaps(ek): eph <- rng; ct = X25519(eph, 9); ss = SHA-256(X25519(eph, ek) || ct || ek)
//   decaps(dk, ct): ss = SHA-256(X25519(dk, ct) || ct || X25519(dk, 9))

#include "pqe2/common/bytes.hpp"
#include "pqe2/kem/kem.hpp"

namespace pqe2::kem::x25519 {

constexpr size_t kKeyBytes = 32;

KemKeyPair keygen_from_secret(ByteView secret);
EncapsResult encaps_with_ephemeral(ByteView ek, ByteView ephemeral_secret);
SharedSecret decaps(ByteView dk, ByteView ct);

}  // namespace pqe2::kem::x25519
