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

#include "pqe2/crypto/keccak.hpp"

#include <bit>

namespace pqe2::crypto {

namespace {

constexpr std::array<uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// rho rotation and pi destination, walked along the (x, y) -> (y, 2x+3y) cycle
constexpr std::array<int, 24> kRho = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                      27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr std::array<int, 24> kPi = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                     15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

}  // namespace

void keccak_f1600(std::array<uint64_t, 25>& a) noexcept {
  for (uint64_t rc : kRoundConstants) {
    // theta
    uint64_t c[5];
    for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    for (int x = 0; x < 5; ++x) {
      uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
      for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
    }
    // rho + pi
    uint64_t carry = a[1];
    for (int i = 0; i < 24; ++i) {
      int j = kPi[i];
      uint64_t tmp = a[j];
      a[j] = std::rotl(carry, kRho[i]);
      carry = tmp;
    }
    // chi
    for (int y = 0; y < 25; y += 5) {
      uint64_t row[5];
      for (int x = 0; x < 5; ++x) row[x] = a[y + x];
      for (int x = 0; x < 5; ++x) a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
    }
    // iota
    a[0] ^= rc;
  }
}

template <size_t Rate, uint8_t Pad>
void KeccakSponge<Rate, Pad>::absorb(ByteView in) noexcept {
  for (uint8_t byte : in) {
    state_[pos_ / 8] ^= static_cast<uint64_t>(byte) << (8 * (pos_ % 8));
    if (++pos_ == Rate) {
      keccak_f1600(state_);
      pos_ = 0;
    }
  }
}

template <size_t Rate, uint8_t Pad>
void KeccakSponge<Rate, Pad>::finalize() noexcept {
  state_[pos_ / 8] ^= static_cast<uint64_t>(Pad) << (8 * (pos_ % 8));
  state_[(Rate - 1) / 8] ^= 0x80ULL << (8 * ((Rate - 1) % 8));
  keccak_f1600(state_);
  pos_ = 0;
  squeezing_ = true;
}

template <size_t Rate, uint8_t Pad>
void KeccakSponge<Rate, Pad>::squeeze(std::span<uint8_t> out) noexcept {
  if (!squeezing_) finalize();
  for (uint8_t& byte : out) {
    if (pos_ == Rate) {
      keccak_f1600(state_);
      pos_ = 0;
    }
    byte = static_cast<uint8_t>(state_[pos_ / 8] >> (8 * (pos_ % 8)));
    ++pos_;
  }
}

template class KeccakSponge<168, 0x1f>;
template class KeccakSponge<136, 0x1f>;
template class KeccakSponge<136, 0x06>;
template class KeccakSponge<72, 0x06>;

std::array<uint8_t, 32> sha3_256(ByteView in) noexcept {
  KeccakSponge<136, 0x06> sponge;
  sponge.absorb(in);
  std::array<uint8_t, 32> out;
  sponge.squeeze(out);
  return out;
}

std::array<uint8_t, 64> sha3_512(ByteView in) noexcept {
  KeccakSponge<72, 0x06> sponge;
  sponge.absorb(in);
  std::array<uint8_t, 64> out;
  sponge.squeeze(out);
  return out;
}

void shake256(ByteView in, std::span<uint8_t> out) noexcept {
  Shake256 sponge;
  sponge.absorb(in);
  sponge.squeeze(out);
}

}  // namespace pqe2::crypto
