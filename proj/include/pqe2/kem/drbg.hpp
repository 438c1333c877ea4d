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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "pqe2/common/bytes.hpp"
#include "pqe2/crypto/keccak.hpp"

namespace pqe2::kem {

using Seed = std::array<uint8_t, 32>;

/// Deterministic random source: SHAKE256 over a domain tag and a 32-byte
/// seed, squeezed on demand. Identical seeds give identical streams.
///
/// Owned by one actor at a time; copying forks an identical stream, so
/// prefer moving it.
class SeedableRandomSource {
 public:
  explicit SeedableRandomSource(const Seed& seed);

  /// Seed from an arbitrary label, e.g. a test name.
  static SeedableRandomSource from_label(std::string_view label);

  void fill(std::span<uint8_t> out) noexcept { sponge_.squeeze(out); }
  Bytes bytes(size_t n);
  uint32_t next_u32();
  uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_unit();

  const Seed& seed() const noexcept { return seed_; }

 private:
  Seed seed_;
  crypto::Shake256 sponge_;
};

/// Child seed bound to a label; used to hand independent streams to the
/// actors of one scenario iteration.
Seed derive_seed(const Seed& parent, std::string_view label);
Seed derive_seed(const Seed& parent, std::string_view label, uint64_t index);

/// Parses exactly 64 hex digits.
Seed parse_seed(std::string_view hex);

}  // namespace pqe2::kem
