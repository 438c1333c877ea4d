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

#include "pqe2/common/bytes.hpp"

namespace pqe2::crypto {

void keccak_f1600(std::array<uint64_t, 25>& state) noexcept;

/// FIPS 202 sponge with byte-granular absorb and squeeze. `Rate` is in
/// bytes, `Pad` is the domain-separation byte (0x06 SHA3, 0x1f SHAKE).
template <size_t Rate, uint8_t Pad>
class KeccakSponge {
 public:
  void absorb(ByteView in) noexcept;
  void squeeze(std::span<uint8_t> out) noexcept;

 private:
  void finalize() noexcept;

  std::array<uint64_t, 25> state_{};
  size_t pos_ = 0;
  bool squeezing_ = false;
};

using Shake128 = KeccakSponge<168, 0x1f>;
using Shake256 = KeccakSponge<136, 0x1f>;

std::array<uint8_t, 32> sha3_256(ByteView in) noexcept;
std::array<uint8_t, 64> sha3_512(ByteView in) noexcept;
void shake256(ByteView in, std::span<uint8_t> out) noexcept;

extern template class KeccakSponge<168, 0x1f>;
extern template class KeccakSponge<136, 0x1f>;
extern template class KeccakSponge<136, 0x06>;
extern template class KeccakSponge<72, 0x06>;

}  // namespace pqe2::crypto
