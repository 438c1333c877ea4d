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

// Conformance suites behind `bench kat`.
//
//   mlkem   FIPS 203 KAT files plus the ACVP keyGen / encapDecap samples
//   aead    CAVS AES-256-GCM encrypt and decrypt (forgeries must fail)
//   prf     HMAC-SHA-256 vectors of RFC 4231
//   x25519  RFC 7748 scalar multiplication vectors

#include <filesystem>
#include <string>
#include <vector>

#include "pqe2/kem/kat.hpp"

namespace pqe2::bench {

inline constexpr std::string_view kKatSuites[] = {"mlkem", "aead", "prf", "x25519"};

struct KatFileResult {
  std::string suite;
  std::string file;
  kem::KatOutcome outcome;
};

std::filesystem::path default_kat_dir();

/// Runs one suite over the files it expects in `dir`. A missing file throws
/// kIoError; an unknown suite name throws kConfigError.
std::vector<KatFileResult> run_kat_suite(std::string_view suite, const std::filesystem::path& dir);

}  // namespace pqe2::bench
