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

#include "pqe2/kem/drbg.hpp"

namespace pqe2::kem {

namespace {
constexpr std::string_view kDomain = "pqe2/drbg/v1";
}

SeedableRandomSource::SeedableRandomSource(const Seed& seed) : seed_(seed) {
  sponge_.absorb(ByteView(reinterpret_cast<const uint8_t*>(kDomain.data()), kDomain.size()));
  sponge_.absorb(seed_);
}

SeedableRandomSource SeedableRandomSource::from_label(std::string_view label) {
  return SeedableRandomSource(crypto::sha3_256(to_bytes(label)));
}

Bytes SeedableRandomSource::bytes(size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

uint32_t SeedableRandomSource::next_u32() {
  uint8_t b[4];
  fill(b);
  return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) | (uint32_t{b[2]} << 8) | b[3];
}

uint64_t SeedableRandomSource::next_u64() {
  uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double SeedableRandomSource::next_unit() {
  return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

Seed derive_seed(const Seed& parent, std::string_view label) {
  return crypto::sha3_256(concat(parent, to_bytes(label)));
}

Seed derive_seed(const Seed& parent, std::string_view label, uint64_t index) {
  uint8_t idx[8];
  store_be64(idx, index);
  return crypto::sha3_256(concat(parent, to_bytes(label), idx));
}

Seed parse_seed(std::string_view hex) {
  if (hex.size() != 64) throw Error(Errc::kConfigError, "seed must be 64 hex digits");
  Bytes raw = from_hex(hex);
  Seed seed;
  std::copy(raw.begin(), raw.end(), seed.begin());
  return seed;
}

}  // namespace pqe2::kem
