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

#include <string>
#include <string_view>
#include <vector>

#include "pqe2/kem/kem.hpp"

namespace pqe2::ike {

enum class Aead : uint8_t { kAes256Gcm16 = 1 };
enum class Prf : uint8_t { kHmacSha256 = 1 };

/// Cipher suite in strongSwan proposal notation, e.g.
/// "aes256gcm16-prfsha256-mlkem768". The hybrid suite is written
/// "aes256gcm16-prfsha256-x25519-ke1_mlkem768".
struct Proposal {
  Aead aead = Aead::kAes256Gcm16;
  Prf prf = Prf::kHmacSha256;
  kem::KemParamSet kem = kem::KemParamSet::kEcdhX25519;

  friend bool operator==(const Proposal&, const Proposal&) = default;
};

Proposal parse_proposal(std::string_view text);
std::string render_proposal(const Proposal& p);

/// Comma-separated list, preference order.
std::vector<Proposal> parse_proposal_list(std::string_view text);
std::string render_proposal_list(const std::vector<Proposal>& list);

std::string_view kem_token(kem::KemParamSet params);
kem::KemParamSet parse_kem_token(std::string_view token);

/// First entry of `local` that also appears in `remote`.
Proposal negotiate(const std::vector<Proposal>& local, const std::vector<Proposal>& remote);

}  // namespace pqe2::ike
