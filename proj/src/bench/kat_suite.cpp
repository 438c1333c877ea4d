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

#include "pqe2/bench/kat_suite.hpp"

#include <algorithm>

#include "pqe2/common/error.hpp"
#include "pqe2/crypto/primitives.hpp"

namespace pqe2::bench {

namespace {

std::vector<kem::KatRecord> load(const std::filesystem::path& dir, const std::string& file) {
  const auto path = dir / file;
  if (!std::filesystem::exists(path)) throw Error(Errc::kIoError, "missing vector file " + path.string());
  return kem::parse_kat_file(path);
}

std::string label(const kem::KatRecord& rec) {
  return rec.has("count") ? "count " + rec.text("count") : "line " + std::to_string(rec.line);
}

kem::KatOutcome aead_encrypt(const std::vector<kem::KatRecord>& records) {
  kem::KatOutcome out;
  for (const auto& rec : records) {
    const Bytes sealed = crypto::aes256gcm_seal(rec.hex("key"), rec.hex("iv"), rec.hex("aad"), rec.hex("pt"));
    out.record(sealed == concat(rec.hex("ct"), rec.hex("tag")), label(rec));
  }
  return out;
}

kem::KatOutcome aead_decrypt(const std::vector<kem::KatRecord>& records) {
  kem::KatOutcome out;
  for (const auto& rec : records) {
    const auto opened =
        crypto::aes256gcm_open(rec.hex("key"), rec.hex("iv"), rec.hex("aad"), concat(rec.hex("ct"), rec.hex("tag")));
    if (rec.flagged("FAIL")) {
      out.record(!opened.has_value(), label(rec) + " forgery accepted");
    } else {
      out.record(opened && *opened == rec.hex("pt"), label(rec));
    }
  }
  return out;
}

kem::KatOutcome prf(const std::vector<kem::KatRecord>& records) {
  kem::KatOutcome out;
  for (const auto& rec : records) {
    const Bytes md = rec.hex("md");
    const auto got = crypto::hmac_sha256(rec.hex("key"), rec.hex("msg"));
    out.record(md.size() <= got.size() && std::equal(md.begin(), md.end(), got.begin()), label(rec));
  }
  return out;
}

kem::KatOutcome x25519(const std::vector<kem::KatRecord>& records) {
  kem::KatOutcome out;
  for (const auto& rec : records) {
    const auto got = crypto::x25519_shared(rec.hex("input_scalar"), rec.hex("input_u"));
    out.record(Bytes(got.begin(), got.end()) == rec.hex("output_u"), label(rec));
  }
  return out;
}

}  // namespace

std::filesystem::path default_kat_dir() { return PQE2_KAT_DIR; }

std::vector<KatFileResult> run_kat_suite(std::string_view suite, const std::filesystem::path& dir) {
  std::vector<KatFileResult> results;
  auto add = [&](const std::string& file, kem::KatOutcome outcome) {
    results.push_back({std::string(suite), file, std::move(outcome)});
  };
  if (suite == "mlkem") {
    const std::pair<kem::mlkem::Level, std::string> levels[] = {
        {kem::mlkem::Level::k512, "mlkem512"}, {kem::mlkem::Level::k768, "mlkem768"}, {kem::mlkem::Level::k1024, "mlkem1024"}};
    for (const auto& [level, stem] : levels) {
      add(stem + ".rsp", kem::run_mlkem_kat(level, load(dir, stem + ".rsp")));
      add(stem + "_acvp.rsp", kem::run_mlkem_kat(level, load(dir, stem + "_acvp.rsp")));
    }
  } else if (suite == "aead") {
    add("gcmEncryptExtIV256_iv96.rsp", aead_encrypt(load(dir, "gcmEncryptExtIV256_iv96.rsp")));
    add("gcmDecrypt256_iv96.rsp", aead_decrypt(load(dir, "gcmDecrypt256_iv96.rsp")));
  } else if (suite == "prf") {
    add("hmac_sha256_rfc4231.txt", prf(load(dir, "hmac_sha256_rfc4231.txt")));
  } else if (suite == "x25519") {
    add("x25519_rfc7748.txt", x25519(load(dir, "x25519_rfc7748.txt")));
  } else {
    throw Error(Errc::kConfigError, "unknown KAT suite '" + std::string(suite) + "'");
  }
  return results;
}

}  // namespace pqe2::bench
