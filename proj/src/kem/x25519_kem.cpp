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

#include "pqe2/kem/x25519_kem.hpp"

#include "pqe2/crypto/primitives.hpp"

namespace pqe2::kem::x25519 {

namespace {

SharedSecret bind(ByteView shared_point, ByteView ct, ByteView ek) {
  return crypto::sha256(concat(shared_point, ct, ek));
}

}  // namespace

KemKeyPair keygen_from_secret(ByteView secret) {
  if (secret.size() != kKeyBytes) throw Error(Errc::kMalformedInput, "X25519 secret length");
  const auto pub = crypto::x25519_public(secret);
  return {KemParamSet::kEcdhX25519, Bytes(pub.begin(), pub.end()), Bytes(secret.begin(), secret.end())};
}

EncapsResult encaps_with_ephemeral(ByteView ek, ByteView ephemeral_secret) {
  if (ek.size() != kKeyBytes) throw Error(Errc::kMalformedKey, "X25519 encapsulation key length");
  const auto eph_pub = crypto::x25519_public(ephemeral_secret);
  const auto shared = crypto::x25519_shared(ephemeral_secret, ek);
  EncapsResult out;
  out.ct.assign(eph_pub.begin(), eph_pub.end());
  out.ss = bind(shared, out.ct, ek);
  return out;
}

SharedSecret decaps(ByteView dk, ByteView ct) {
  if (dk.size() != kKeyBytes || ct.size() != kKeyBytes) {
    throw Error(Errc::kMalformedInput, "X25519 decapsulation input length");
  }
  const auto own_pub = crypto::x25519_public(dk);
  std::array<uint8_t, 32> shared;
  try {
    shared = crypto::x25519_shared(dk, ct);
  } catch (const Error& e) {
    throw Error(Errc::kMalformedInput, e.what());
  }
  return bind(shared, ct, own_pub);
}

}  // namespace pqe2::kem::x25519
