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

#include "pqe2/kem/mlkem.hpp"

#include <vector>

#include "pqe2/crypto/keccak.hpp"

namespace pqe2::kem::mlkem {

namespace {

constexpr uint32_t kQ = 3329;
constexpr uint32_t kHalfQ = (kQ - 1) / 2;
constexpr uint32_t kInv128 = 3303;  // 128^-1 mod q
constexpr int kN = 256;

using Poly = std::array<uint16_t, kN>;
using PolyVec = std::vector<Poly>;

constexpr uint32_t mod_q(uint32_t x) { return x % kQ; }

constexpr uint32_t pow_mod(uint32_t base, uint32_t exp) {
  uint32_t result = 1;
  base %= kQ;
  while (exp > 0) {
    if (exp & 1) result = result * base % kQ;
    base = base * base % kQ;
    exp >>= 1;
  }
  return result;
}

constexpr uint32_t bitrev7(uint32_t i) {
  uint32_t r = 0;
  for (int b = 0; b < 7; ++b) r |= ((i >> b) & 1) << (6 - b);
  return r;
}

// zeta^BitRev7(i) and zeta^(2*BitRev7(i)+1) for zeta = 17
constexpr std::array<uint16_t, 128> make_zetas() {
  std::array<uint16_t, 128> z{};
  for (uint32_t i = 0; i < 128; ++i) z[i] = static_cast<uint16_t>(pow_mod(17, bitrev7(i)));
  return z;
}
constexpr std::array<uint16_t, 128> make_gammas() {
  std::array<uint16_t, 128> g{};
  for (uint32_t i = 0; i < 128; ++i) g[i] = static_cast<uint16_t>(pow_mod(17, 2 * bitrev7(i) + 1));
  return g;
}
constexpr auto kZetas = make_zetas();
constexpr auto kGammas = make_gammas();

void ntt(Poly& f) {
  int i = 1;
  for (int len = 128; len >= 2; len /= 2) {
    for (int start = 0; start < kN; start += 2 * len) {
      const uint32_t zeta = kZetas[i++];
      for (int j = start; j < start + len; ++j) {
        const uint32_t t = mod_q(zeta * f[j + len]);
        f[j + len] = static_cast<uint16_t>(mod_q(f[j] + kQ - t));
        f[j] = static_cast<uint16_t>(mod_q(f[j] + t));
      }
    }
  }
}

void ntt_inverse(Poly& f) {
  int i = 127;
  for (int len = 2; len <= 128; len *= 2) {
    for (int start = 0; start < kN; start += 2 * len) {
      const uint32_t zeta = kZetas[i--];
      for (int j = start; j < start + len; ++j) {
        const uint32_t t = f[j];
        f[j] = static_cast<uint16_t>(mod_q(t + f[j + len]));
        f[j + len] = static_cast<uint16_t>(mod_q(zeta * (f[j + len] + kQ - t)));
      }
    }
  }
  for (auto& c : f) c = static_cast<uint16_t>(mod_q(c * kInv128));
}

// acc += f o g in the NTT domain; acc coefficients stay reduced.
void multiply_ntt_accumulate(Poly& acc, const Poly& f, const Poly& g) {
  for (int i = 0; i < 128; ++i) {
    const uint32_t a0 = f[2 * i], a1 = f[2 * i + 1];
    const uint32_t b0 = g[2 * i], b1 = g[2 * i + 1];
    const uint32_t c0 = mod_q(a0 * b0 + mod_q(a1 * b1) * kGammas[i]);
    const uint32_t c1 = mod_q(a0 * b1 + a1 * b0);
    acc[2 * i] = static_cast<uint16_t>(mod_q(acc[2 * i] + c0));
    acc[2 * i + 1] = static_cast<uint16_t>(mod_q(acc[2 * i + 1] + c1));
  }
}

void add_into(Poly& acc, const Poly& f) {
  for (int i = 0; i < kN; ++i) acc[i] = static_cast<uint16_t>(mod_q(acc[i] + f[i]));
}

Poly sample_ntt(ByteView rho, uint8_t j, uint8_t i) {
  crypto::Shake128 xof;
  xof.absorb(rho);
  const uint8_t idx[2] = {j, i};
  xof.absorb(idx);
  Poly a{};
  int filled = 0;
  std::array<uint8_t, 168> block;
  while (filled < kN) {
    xof.squeeze(block);
    for (size_t p = 0; p + 3 <= block.size() && filled < kN; p += 3) {
      const uint32_t d1 = block[p] | (static_cast<uint32_t>(block[p + 1] & 0x0f) << 8);
      const uint32_t d2 = (block[p + 1] >> 4) | (static_cast<uint32_t>(block[p + 2]) << 4);
      if (d1 < kQ) a[filled++] = static_cast<uint16_t>(d1);
      if (d2 < kQ && filled < kN) a[filled++] = static_cast<uint16_t>(d2);
    }
  }
  return a;
}

// SamplePolyCBD_eta(PRF_eta(seed, nonce))
Poly sample_cbd(ByteView seed, uint8_t nonce, int eta) {
  crypto::Shake256 prf;
  prf.absorb(seed);
  prf.absorb(ByteView(&nonce, 1));
  std::array<uint8_t, 64 * 3> buf{};
  std::span<uint8_t> bytes(buf.data(), static_cast<size_t>(64 * eta));
  prf.squeeze(bytes);
  auto bit = [&](int pos) -> uint32_t { return (bytes[pos / 8] >> (pos % 8)) & 1; };
  Poly f{};
  for (int i = 0; i < kN; ++i) {
    uint32_t x = 0, y = 0;
    for (int j = 0; j < eta; ++j) {
      x += bit(2 * i * eta + j);
      y += bit(2 * i * eta + eta + j);
    }
    f[i] = static_cast<uint16_t>(mod_q(x + kQ - y));
  }
  return f;
}

void byte_encode(const Poly& f, int d, Bytes& out) {
  uint32_t acc = 0;
  int bits = 0;
  for (int i = 0; i < kN; ++i) {
    acc |= static_cast<uint32_t>(f[i]) << bits;
    bits += d;
    while (bits >= 8) {
      out.push_back(static_cast<uint8_t>(acc));
      acc >>= 8;
      bits -= 8;
    }
  }
}

// For d = 12 the decoded value is reduced mod q.
Poly byte_decode(ByteView in, int d) {
  Poly f{};
  uint32_t acc = 0;
  int bits = 0;
  size_t pos = 0;
  const uint32_t mask = (1u << d) - 1;
  for (int i = 0; i < kN; ++i) {
    while (bits < d) {
      acc |= static_cast<uint32_t>(in[pos++]) << bits;
      bits += 8;
    }
    uint32_t v = acc & mask;
    acc >>= d;
    bits -= d;
    f[i] = static_cast<uint16_t>(d == 12 ? mod_q(v) : v);
  }
  return f;
}

uint16_t compress(uint32_t x, int d) {
  return static_cast<uint16_t>((((x << d) + kHalfQ) / kQ) & ((1u << d) - 1));
}

uint16_t decompress(uint32_t y, int d) {
  return static_cast<uint16_t>((kQ * y + (1u << (d - 1))) >> d);
}

void compress_poly(Poly& f, int d) {
  for (auto& c : f) c = compress(c, d);
}

void decompress_poly(Poly& f, int d) {
  for (auto& c : f) c = decompress(c, d);
}

std::vector<PolyVec> expand_matrix(ByteView rho, int k) {
  std::vector<PolyVec> a(static_cast<size_t>(k), PolyVec(static_cast<size_t>(k)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      a[i][j] = sample_ntt(rho, static_cast<uint8_t>(j), static_cast<uint8_t>(i));
    }
  }
  return a;
}

struct PkeKeys {
  Bytes ek;
  Bytes dk;
};

PkeKeys pke_keygen(const Params& p, ByteView d) {
  Bytes seed_input(d.begin(), d.end());
  seed_input.push_back(static_cast<uint8_t>(p.k));
  const auto g = crypto::sha3_512(seed_input);
  ByteView rho(g.data(), 32);
  ByteView sigma(g.data() + 32, 32);

  const auto a = expand_matrix(rho, p.k);
  uint8_t nonce = 0;
  PolyVec s(static_cast<size_t>(p.k)), e(static_cast<size_t>(p.k));
  for (auto& poly : s) poly = sample_cbd(sigma, nonce++, p.eta1);
  for (auto& poly : e) poly = sample_cbd(sigma, nonce++, p.eta1);
  for (auto& poly : s) ntt(poly);
  for (auto& poly : e) ntt(poly);

  PkeKeys keys;
  keys.ek.reserve(384 * p.k + 32);
  keys.dk.reserve(384 * p.k);
  for (int i = 0; i < p.k; ++i) {
    Poly t = e[i];
    for (int j = 0; j < p.k; ++j) multiply_ntt_accumulate(t, a[i][j], s[j]);
    byte_encode(t, 12, keys.ek);
  }
  append(keys.ek, rho);
  for (const auto& poly : s) byte_encode(poly, 12, keys.dk);
  return keys;
}

Bytes pke_encrypt(const Params& p, ByteView ek, ByteView m, ByteView r) {
  const size_t t_len = 384 * static_cast<size_t>(p.k);
  PolyVec t_hat(static_cast<size_t>(p.k));
  for (int i = 0; i < p.k; ++i) t_hat[i] = byte_decode(ek.subspan(384 * i, 384), 12);
  ByteView rho = ek.subspan(t_len, 32);
  const auto a = expand_matrix(rho, p.k);

  uint8_t nonce = 0;
  PolyVec y(static_cast<size_t>(p.k)), e1(static_cast<size_t>(p.k));
  for (auto& poly : y) poly = sample_cbd(r, nonce++, p.eta1);
  for (auto& poly : e1) poly = sample_cbd(r, nonce++, p.eta2);
  const Poly e2 = sample_cbd(r, nonce, p.eta2);
  for (auto& poly : y) ntt(poly);

  Bytes c;
  c.reserve(32 * (p.du * p.k + p.dv));
  for (int i = 0; i < p.k; ++i) {
    Poly u{};
    for (int j = 0; j < p.k; ++j) multiply_ntt_accumulate(u, a[j][i], y[j]);
    ntt_inverse(u);
    add_into(u, e1[i]);
    compress_poly(u, p.du);
    byte_encode(u, p.du, c);
  }

  Poly v{};
  for (int i = 0; i < p.k; ++i) multiply_ntt_accumulate(v, t_hat[i], y[i]);
  ntt_inverse(v);
  add_into(v, e2);
  Poly mu = byte_decode(m, 1);
  decompress_poly(mu, 1);
  add_into(v, mu);
  compress_poly(v, p.dv);
  byte_encode(v, p.dv, c);
  return c;
}

Bytes pke_decrypt(const Params& p, ByteView dk_pke, ByteView c) {
  const size_t u_bytes = 32 * static_cast<size_t>(p.du);
  Poly w{};
  for (int i = 0; i < p.k; ++i) {
    Poly u = byte_decode(c.subspan(u_bytes * i, u_bytes), p.du);
    decompress_poly(u, p.du);
    ntt(u);
    const Poly s = byte_decode(dk_pke.subspan(384 * i, 384), 12);
    multiply_ntt_accumulate(w, s, u);
  }
  ntt_inverse(w);
  Poly v = byte_decode(c.subspan(u_bytes * p.k, 32 * static_cast<size_t>(p.dv)), p.dv);
  decompress_poly(v, p.dv);
  for (int i = 0; i < kN; ++i) v[i] = static_cast<uint16_t>(mod_q(v[i] + kQ - w[i]));
  compress_poly(v, 1);
  Bytes m;
  m.reserve(32);
  byte_encode(v, 1, m);
  return m;
}

void require_length(ByteView v, size_t expected, Errc code, const char* what) {
  if (v.size() != expected) throw Error(code, what);
}

}  // namespace

bool encapsulation_key_valid(Level level, ByteView ek) {
  const Params p = params(level);
  if (ek.size() != ek_bytes(level)) return false;
  // decode-then-encode must be the identity on every coefficient
  for (int i = 0; i < p.k; ++i) {
    ByteView chunk = ek.subspan(384 * i, 384);
    Bytes round_trip;
    round_trip.reserve(384);
    byte_encode(byte_decode(chunk, 12), 12, round_trip);
    if (!std::equal(round_trip.begin(), round_trip.end(), chunk.begin())) return false;
  }
  return true;
}

bool decapsulation_key_valid(Level level, ByteView dk) {
  const size_t k = static_cast<size_t>(params(level).k);
  if (dk.size() != dk_bytes(level)) return false;
  const auto h = crypto::sha3_256(dk.subspan(384 * k, 384 * k + 32));
  return std::equal(h.begin(), h.end(), dk.begin() + static_cast<std::ptrdiff_t>(768 * k + 32));
}

KeyPair keygen_internal(Level level, ByteView d, ByteView z) {
  require_length(d, kSeedBytes, Errc::kMalformedInput, "ML-KEM keygen seed d");
  require_length(z, kSeedBytes, Errc::kMalformedInput, "ML-KEM keygen seed z");
  PkeKeys pke = pke_keygen(params(level), d);
  KeyPair kp;
  kp.ek = pke.ek;
  const auto h = crypto::sha3_256(pke.ek);
  kp.dk = concat(pke.dk, pke.ek, h, z);
  return kp;
}

Encapsulation encaps_internal(Level level, ByteView ek, ByteView m) {
  require_length(m, kSeedBytes, Errc::kMalformedInput, "ML-KEM encapsulation message");
  if (!encapsulation_key_valid(level, ek)) {
    throw Error(Errc::kMalformedKey, "ML-KEM encapsulation key fails length or modulus check");
  }
  const auto h = crypto::sha3_256(ek);
  const auto g = crypto::sha3_512(concat(m, h));
  Encapsulation out;
  std::copy_n(g.begin(), 32, out.ss.begin());
  out.ct = pke_encrypt(params(level), ek, m, ByteView(g.data() + 32, 32));
  return out;
}

SharedSecret decaps(Level level, ByteView dk, ByteView ct) {
  const Params p = params(level);
  const size_t k = static_cast<size_t>(p.k);
  require_length(ct, ct_bytes(level), Errc::kMalformedInput, "ML-KEM ciphertext length");
  require_length(dk, dk_bytes(level), Errc::kMalformedInput, "ML-KEM decapsulation key length");
  if (!decapsulation_key_valid(level, dk)) {
    throw Error(Errc::kMalformedInput, "ML-KEM decapsulation key hash check");
  }
  ByteView dk_pke = dk.subspan(0, 384 * k);
  ByteView ek_pke = dk.subspan(384 * k, 384 * k + 32);
  ByteView h = dk.subspan(768 * k + 32, 32);
  ByteView z = dk.subspan(768 * k + 64, 32);

  const Bytes m_prime = pke_decrypt(p, dk_pke, ct);
  const auto g = crypto::sha3_512(concat(m_prime, h));
  SharedSecret rejected;
  {
    crypto::Shake256 j;
    j.absorb(z);
    j.absorb(ct);
    j.squeeze(rejected);
  }
  const Bytes c_prime = pke_encrypt(p, ek_pke, m_prime, ByteView(g.data() + 32, 32));
  const bool equal = constant_time_equal(ct, c_prime);
  // branch-free select between K' and the rejection key
  const uint8_t mask = static_cast<uint8_t>(-static_cast<int>(equal));
  SharedSecret out;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>((g[i] & mask) | (rejected[i] & static_cast<uint8_t>(~mask)));
  }
  return out;
}

}  // namespace pqe2::kem::mlkem
