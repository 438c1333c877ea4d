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

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <memory>

#include "pqe2/crypto/primitives.hpp"

namespace pqe2::crypto {

namespace {

struct CipherCtxFree {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
struct PkeyFree {
  void operator()(EVP_PKEY* key) const { EVP_PKEY_free(key); }
};
struct PkeyCtxFree {
  void operator()(EVP_PKEY_CTX* ctx) const { EVP_PKEY_CTX_free(ctx); }
};

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree>;
using Pkey = std::unique_ptr<EVP_PKEY, PkeyFree>;
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree>;

[[noreturn]] void backend_failure(const char* what) { throw Error(Errc::kCryptoBackend, what); }

void check(int rc, const char* what) {
  if (rc != 1) backend_failure(what);
}

CipherCtx gcm_context(ByteView key, ByteView nonce, bool encrypt) {
  if (key.size() != kGcmKeyBytes || nonce.size() != kGcmNonceBytes) {
    throw Error(Errc::kMalformedInput, "AES-256-GCM key or nonce length");
  }
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) backend_failure("EVP_CIPHER_CTX_new");
  check(EVP_CipherInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr, encrypt ? 1 : 0),
        "gcm init");
  check(EVP_CipherInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data(), -1), "gcm key");
  return ctx;
}

}  // namespace

std::array<uint8_t, 32> sha256(ByteView data) {
  std::array<uint8_t, 32> out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

std::array<uint8_t, 32> hmac_sha256(ByteView key, ByteView data) {
  std::array<uint8_t, 32> out;
  unsigned int len = 0;
  // HMAC() rejects a null key pointer even for zero length.
  static const uint8_t kEmpty = 0;
  const uint8_t* key_ptr = key.empty() ? &kEmpty : key.data();
  if (HMAC(EVP_sha256(), key_ptr, static_cast<int>(key.size()), data.data(), data.size(), out.data(),
           &len) == nullptr ||
      len != out.size()) {
    backend_failure("HMAC-SHA-256");
  }
  return out;
}

Bytes aes256gcm_seal(ByteView key, ByteView nonce, ByteView aad, ByteView plaintext) {
  CipherCtx ctx = gcm_context(key, nonce, true);
  int len = 0;
  if (!aad.empty()) {
    check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())), "aad");
  }
  Bytes out(plaintext.size() + kGcmTagBytes);
  if (!plaintext.empty()) {
    check(EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                            static_cast<int>(plaintext.size())),
          "encrypt");
  }
  check(EVP_EncryptFinal_ex(ctx.get(), out.data() + plaintext.size(), &len), "encrypt final");
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kGcmTagBytes,
                            out.data() + plaintext.size()),
        "get tag");
  return out;
}

std::optional<Bytes> aes256gcm_open(ByteView key, ByteView nonce, ByteView aad,
                                    ByteView ciphertext_and_tag) {
  if (ciphertext_and_tag.size() < kGcmTagBytes) return std::nullopt;
  const size_t ct_len = ciphertext_and_tag.size() - kGcmTagBytes;
  CipherCtx ctx = gcm_context(key, nonce, false);
  int len = 0;
  if (!aad.empty()) {
    check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())), "aad");
  }
  Bytes out(ct_len);
  if (ct_len > 0) {
    check(EVP_DecryptUpdate(ctx.get(), out.data(), &len, ciphertext_and_tag.data(),
                            static_cast<int>(ct_len)),
          "decrypt");
  }
  Bytes tag(ciphertext_and_tag.begin() + static_cast<std::ptrdiff_t>(ct_len), ciphertext_and_tag.end());
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kGcmTagBytes, tag.data()), "set tag");
  uint8_t scratch[16];
  if (EVP_DecryptFinal_ex(ctx.get(), scratch, &len) != 1) return std::nullopt;
  return out;
}

std::array<uint8_t, 32> x25519_public(ByteView private_key) {
  if (private_key.size() != kX25519Bytes) throw Error(Errc::kMalformedKey, "X25519 private key length");
  Pkey key(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, private_key.data(), private_key.size()));
  if (!key) backend_failure("X25519 private key");
  std::array<uint8_t, 32> out;
  size_t len = out.size();
  check(EVP_PKEY_get_raw_public_key(key.get(), out.data(), &len), "X25519 public key");
  return out;
}

std::array<uint8_t, 32> x25519_shared(ByteView private_key, ByteView peer_public) {
  if (private_key.size() != kX25519Bytes || peer_public.size() != kX25519Bytes) {
    throw Error(Errc::kMalformedKey, "X25519 key length");
  }
  Pkey own(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, private_key.data(), private_key.size()));
  Pkey peer(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, peer_public.data(), peer_public.size()));
  if (!own || !peer) backend_failure("X25519 key import");
  PkeyCtx ctx(EVP_PKEY_CTX_new(own.get(), nullptr));
  if (!ctx) backend_failure("EVP_PKEY_CTX_new");
  check(EVP_PKEY_derive_init(ctx.get()), "derive init");
  check(EVP_PKEY_derive_set_peer(ctx.get(), peer.get()), "derive peer");
  std::array<uint8_t, 32> out;
  size_t len = out.size();
  // OpenSSL refuses an all-zero result, which is the only failure mode here.
  if (EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1 || len != out.size()) {
    throw Error(Errc::kMalformedKey, "X25519 peer key yields the zero point");
  }
  return out;
}

}  // namespace pqe2::crypto
