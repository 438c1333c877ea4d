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

#include "pqe2/ike/proposal.hpp"

#include <algorithm>
#include <utility>

namespace pqe2::ike {

namespace {

constexpr std::string_view kAeadToken = "aes256gcm16";
constexpr std::string_view kPrfToken = "prfsha256";

constexpr std::pair<kem::KemParamSet, std::string_view> kKemTokens[] = {
    {kem::KemParamSet::kEcdhX25519, "curve25519"},
    {kem::KemParamSet::kMlKem512, "mlkem512"},
    {kem::KemParamSet::kMlKem768, "mlkem768"},
    {kem::KemParamSet::kMlKem1024, "mlkem1024"},
    {kem::KemParamSet::kHybridX25519MlKem768, "x25519-ke1_mlkem768"},
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view kem_token(kem::KemParamSet params) {
  for (const auto& [id, token] : kKemTokens) {
    if (id == params) return token;
  }
  throw Error(Errc::kUnsupportedParamSet, "KEM id " + std::to_string(static_cast<int>(params)));
}

kem::KemParamSet parse_kem_token(std::string_view token) {
  for (const auto& [id, t] : kKemTokens) {
    if (t == token) return id;
  }
  throw Error(Errc::kUnknownToken, "key exchange '" + std::string(token) + "'");
}

Proposal parse_proposal(std::string_view text) {
  const auto first = text.find('-');
  const auto second = first == std::string_view::npos ? first : text.find('-', first + 1);
  if (second == std::string_view::npos) {
    throw Error(Errc::kMalformedString, "proposal '" + std::string(text) + "' needs <aead>-<prf>-<ke>");
  }
  const std::string_view aead = text.substr(0, first);
  const std::string_view prf = text.substr(first + 1, second - first - 1);
  const std::string_view ke = text.substr(second + 1);
  if (aead.empty() || prf.empty() || ke.empty()) {
    throw Error(Errc::kMalformedString, "empty token in proposal '" + std::string(text) + "'");
  }
  if (aead != kAeadToken) throw Error(Errc::kUnknownToken, "encryption '" + std::string(aead) + "'");
  if (prf != kPrfToken) throw Error(Errc::kUnknownToken, "prf '" + std::string(prf) + "'");
  return {Aead::kAes256Gcm16, Prf::kHmacSha256, parse_kem_token(ke)};
}

std::string render_proposal(const Proposal& p) {
  return std::string(kAeadToken) + "-" + std::string(kPrfToken) + "-" + std::string(kem_token(p.kem));
}

std::vector<Proposal> parse_proposal_list(std::string_view text) {
  std::vector<Proposal> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_proposal(strip(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string render_proposal_list(const std::vector<Proposal>& list) {
  std::string out;
  for (const Proposal& p : list) {
    if (!out.empty()) out += ',';
    out += render_proposal(p);
  }
  return out;
}

Proposal negotiate(const std::vector<Proposal>& local, const std::vector<Proposal>& remote) {
  for (const Proposal& p : local) {
    if (std::find(remote.begin(), remote.end(), p) != remote.end()) return p;
  }
  throw Error(Errc::kNoProposalChosen,
              "no overlap between [" + render_proposal_list(local) + "] and [" + render_proposal_list(remote) + "]");
}

}  // namespace pqe2::ike
