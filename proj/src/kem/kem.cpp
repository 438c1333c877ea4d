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

#include "pqe2/kem/kem.hpp"

#include "pqe2/crypto/primitives.hpp"
#include "pqe2/kem/mlkem.hpp"
#include "pqe2/kem/x25519_kem.hpp"

namespace pqe2::kem {

namespace {

constexpr std::string_view kHybridLabel = "pqe2 hybrid x25519+mlkem768";

std::optional<mlkem::Level> ml_kem_level(KemParamSet params) {
  switch (params) {
    case KemParamSet::kMlKem512: return mlkem::Level::k512;
    case KemParamSet::kMlKem768: return mlkem::Level::k768;
    case KemParamSet::kMlKem1024: return mlkem::Level::k1024;
    default: return std::nullopt;
  }
}

KemSizes ml_kem_sizes(mlkem::Level level) {
  return {mlkem::ek_bytes(level), mlkem::dk_bytes(level), mlkem::ct_bytes(level),
          mlkem::kSharedSecretBytes};
}

constexpr KemSizes kX25519Sizes = {32, 32, 32, 32};

void require_ek(KemParamSet params, ByteView ek) {
  if (ek.size() != param_profile(params).ek_bytes) {
    throw Error(Errc::kMalformedKey, std::string(param_set_name(params)) + " encapsulation key length " +
                                         std::to_string(ek.size()));
  }
}

SharedSecret hybrid_secret(ByteView ss_classical, ByteView ss_pqc, ByteView ct) {
  return hybrid_combine(ss_classical, ss_pqc, concat(to_bytes(kHybridLabel), ct));
}

}  // namespace

KemSizes param_profile(KemParamSet params) {
  if (auto level = ml_kem_level(params)) return ml_kem_sizes(*level);
  switch (params) {
    case KemParamSet::kEcdhX25519: return kX25519Sizes;
    case KemParamSet::kHybridX25519MlKem768: {
      const KemSizes pq = ml_kem_sizes(mlkem::Level::k768);
      return {kX25519Sizes.ek_bytes + pq.ek_bytes, kX25519Sizes.dk_bytes + pq.dk_bytes,
              kX25519Sizes.ct_bytes + pq.ct_bytes, 32};
    }
    default: break;
  }
  throw Error(Errc::kUnsupportedParamSet, "KEM id " + std::to_string(static_cast<int>(params)));
}

std::string_view param_set_name(KemParamSet params) {
  switch (params) {
    case KemParamSet::kEcdhX25519: return "X25519";
    case KemParamSet::kMlKem512: return "ML-KEM-512";
    case KemParamSet::kMlKem768: return "ML-KEM-768";
    case KemParamSet::kMlKem1024: return "ML-KEM-1024";
    case KemParamSet::kHybridX25519MlKem768: return "X25519+ML-KEM-768";
  }
  throw Error(Errc::kUnsupportedParamSet, "KEM id " + std::to_string(static_cast<int>(params)));
}

bool is_ml_kem(KemParamSet params) { return ml_kem_level(params).has_value(); }

KemKeyPair kem_keygen(KemParamSet params, SeedableRandomSource& rng) {
  if (auto level = ml_kem_level(params)) {
    Bytes d = rng.bytes(32);
    Bytes z = rng.bytes(32);
    mlkem::KeyPair kp = mlkem::keygen_internal(*level, d, z);
    return {params, std::move(kp.ek), std::move(kp.dk)};
  }
  switch (params) {
    case KemParamSet::kEcdhX25519: return x25519::keygen_from_secret(rng.bytes(32));
    case KemParamSet::kHybridX25519MlKem768: {
      KemKeyPair classical = x25519::keygen_from_secret(rng.bytes(32));
      Bytes d = rng.bytes(32);
      Bytes z = rng.bytes(32);
      mlkem::KeyPair pq = mlkem::keygen_internal(mlkem::Level::k768, d, z);
      return {params, concat(classical.ek, pq.ek), concat(classical.dk, pq.dk)};
    }
    default: break;
  }
  throw Error(Errc::kUnsupportedParamSet, "KEM id " + std::to_string(static_cast<int>(params)));
}

EncapsResult kem_encaps(KemParamSet params, ByteView ek, SeedableRandomSource& rng) {
  require_ek(params, ek);
  if (auto level = ml_kem_level(params)) {
    Bytes m = rng.bytes(32);
    mlkem::Encapsulation enc = mlkem::encaps_internal(*level, ek, m);
    return {std::move(enc.ct), enc.ss};
  }
  if (params == KemParamSet::kEcdhX25519) return x25519::encaps_with_ephemeral(ek, rng.bytes(32));

  // hybrid
  EncapsResult classical = x25519::encaps_with_ephemeral(ek.first(32), rng.bytes(32));
  Bytes m = rng.bytes(32);
  mlkem::Encapsulation pq = mlkem::encaps_internal(mlkem::Level::k768, ek.subspan(32), m);
  EncapsResult out;
  out.ct = concat(classical.ct, pq.ct);
  out.ss = hybrid_secret(classical.ss, pq.ss, out.ct);
  return out;
}

SharedSecret kem_decaps(KemParamSet params, ByteView dk, ByteView ct) {
  const KemSizes sizes = param_profile(params);
  if (dk.size() != sizes.dk_bytes || ct.size() != sizes.ct_bytes) {
    throw Error(Errc::kMalformedInput, std::string(param_set_name(params)) + " decapsulation input length");
  }
  if (auto level = ml_kem_level(params)) return mlkem::decaps(*level, dk, ct);
  if (params == KemParamSet::kEcdhX25519) return x25519::decaps(dk, ct);

  const SharedSecret classical = x25519::decaps(dk.first(32), ct.first(32));
  const SharedSecret pq = mlkem::decaps(mlkem::Level::k768, dk.subspan(32), ct.subspan(32));
  return hybrid_secret(classical, pq, ct);
}

SharedSecret hybrid_combine(ByteView ss_classical, ByteView ss_pqc, ByteView context) {
  if (ss_classical.size() != 32 || ss_pqc.size() != 32) {
    throw Error(Errc::kMalformedInput, "hybrid inputs must be 32 bytes each");
  }
  return crypto::hmac_sha256(concat(ss_classical, ss_pqc), context);
}

}  // namespace pqe2::kem
