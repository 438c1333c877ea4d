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

// Uniform key-encapsulation interface over X25519 (wrapped as a KEM), the
// three ML-KEM parameter sets and the X25519+ML-KEM-768 hybrid.

#include <array>
#include <optional>
#include <string_view>

#include "pqe2/common/bytes.hpp"
#include "pqe2/kem/drbg.hpp"

namespace pqe2::kem {

enum class KemParamSet : uint16_t {
  kEcdhX25519 = 1,
  kMlKem512 = 2,
  kMlKem768 = 3,
  kMlKem1024 = 4,
  kHybridX25519MlKem768 = 5,
};

inline constexpr std::array<KemParamSet, 5> kAllParamSets = {
    KemParamSet::kEcdhX25519, KemParamSet::kMlKem512, KemParamSet::kMlKem768,
    KemParamSet::kMlKem1024, KemParamSet::kHybridX25519MlKem768};

struct KemSizes {
  size_t ek_bytes;
  size_t dk_bytes;
  size_t ct_bytes;
  size_t ss_bytes;

  friend bool operator==(const KemSizes&, const KemSizes&) = default;
};

using SharedSecret = std::array<uint8_t, 32>;

struct KemKeyPair {
  KemParamSet params;
  Bytes ek;
  Bytes dk;
};

struct EncapsResult {
  Bytes ct;
  SharedSecret ss;
};

/// Throws kUnsupportedParamSet for ids outside the enum.
KemSizes param_profile(KemParamSet params);

/// Display name, e.g. "ML-KEM-768".
std::string_view param_set_name(KemParamSet params);
bool is_ml_kem(KemParamSet params);

KemKeyPair kem_keygen(KemParamSet params, SeedableRandomSource& rng);
EncapsResult kem_encaps(KemParamSet params, ByteView ek, SeedableRandomSource& rng);
SharedSecret kem_decaps(KemParamSet params, ByteView dk, ByteView ct);

/// PRF(ss_classical || ss_pqc, context) with HMAC-SHA-256 as the PRF.
SharedSecret hybrid_combine(ByteView ss_classical, ByteView ss_pqc, ByteView context);

}  // namespace pqe2::kem
