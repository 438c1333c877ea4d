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

// Reader for line-oriented "key = hex" known-answer files (the NIST .rsp
// layout) and the ML-KEM checks driven by them.

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqe2/common/bytes.hpp"
#include "pqe2/kem/mlkem.hpp"

namespace pqe2::kem {

/// One record. Keys are lower-cased; `[Name = value]` section headers that
/// precede the record are copied into `section`; bare words such as
/// `FAIL` land in `flags`.
struct KatRecord {
  size_t line = 0;
  std::map<std::string, std::string> fields;
  std::map<std::string, std::string> section;
  std::vector<std::string> flags;

  bool has(const std::string& key) const { return fields.count(key) != 0; }
  Bytes hex(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool flagged(const std::string& flag) const;
};

/// A record starts at a `count` line (any case) or after a blank line.
std::vector<KatRecord> parse_kat(std::istream& in);
std::vector<KatRecord> parse_kat_file(const std::filesystem::path& path);

struct KatOutcome {
  size_t passed = 0;
  size_t failed = 0;
  std::vector<std::string> failures;

  void record(bool ok, const std::string& label);
  void merge(const KatOutcome& other);
  bool ok() const { return failed == 0 && passed > 0; }
};

/// Checks every operation a record supports:
///   d, z            -> keygen, compared with pk / sk when present
///   pk, msg         -> encapsulation, compared with ct / ss
///   sk, ct, ss      -> decapsulation
///   sk, ct_n, ss_n  -> implicit-rejection decapsulation
KatOutcome run_mlkem_kat(mlkem::Level level, const std::vector<KatRecord>& records);

}  // namespace pqe2::kem
