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

#include "pqe2/kem/kat.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace pqe2::kem {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Bytes KatRecord::hex(const std::string& key) const { return from_hex(text(key)); }

const std::string& KatRecord::text(const std::string& key) const {
  auto it = fields.find(key);
  if (it == fields.end()) throw Error(Errc::kDecodeError, "KAT record missing field '" + key + "'");
  return it->second;
}

bool KatRecord::flagged(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::vector<KatRecord> parse_kat(std::istream& in) {
  std::vector<KatRecord> records;
  std::map<std::string, std::string> section;
  std::optional<KatRecord> current;
  auto flush = [&] {
    if (current && !current->fields.empty()) records.push_back(std::move(*current));
    current.reset();
  };

  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      flush();
      const std::string inner = line.substr(1, line.size() - 2);
      const auto eq = inner.find('=');
      // a header with a new first key (e.g. [Keylen]) opens a fresh group
      if (eq == std::string::npos) continue;
      const std::string key = lower(trim(inner.substr(0, eq)));
      if (key == "keylen") section.clear();
      section[key] = trim(inner.substr(eq + 1));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!current) throw Error(Errc::kDecodeError, "flag outside a record at line " + std::to_string(line_no));
      current->flags.push_back(line);
      continue;
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "count") flush();
    if (!current) {
      current.emplace();
      current->line = line_no;
      current->section = section;
    }
    current->fields[key] = value;
  }
  flush();
  return records;
}

std::vector<KatRecord> parse_kat_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open KAT file " + path.string());
  return parse_kat(in);
}

void KatOutcome::record(bool ok, const std::string& label) {
  if (ok) {
    ++passed;
  } else {
    ++failed;
    failures.push_back(label);
  }
}

void KatOutcome::merge(const KatOutcome& other) {
  passed += other.passed;
  failed += other.failed;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

KatOutcome run_mlkem_kat(mlkem::Level level, const std::vector<KatRecord>& records) {
  KatOutcome outcome;
  for (const KatRecord& rec : records) {
    const std::string id = "count " + (rec.has("count") ? rec.text("count") : std::to_string(rec.line));
    try {
      if (rec.has("d") && rec.has("z")) {
        const mlkem::KeyPair kp = mlkem::keygen_internal(level, rec.hex("d"), rec.hex("z"));
        if (rec.has("pk")) outcome.record(kp.ek == rec.hex("pk"), id + " keygen ek");
        if (rec.has("sk")) outcome.record(kp.dk == rec.hex("sk"), id + " keygen dk");
      }
      if (rec.has("pk") && rec.has("msg")) {
        const mlkem::Encapsulation enc = mlkem::encaps_internal(level, rec.hex("pk"), rec.hex("msg"));
        if (rec.has("ct")) outcome.record(enc.ct == rec.hex("ct"), id + " encaps ct");
        if (rec.has("ss")) {
          const Bytes ss = rec.hex("ss");
          outcome.record(std::equal(ss.begin(), ss.end(), enc.ss.begin(), enc.ss.end()), id + " encaps ss");
        }
      }
      if (rec.has("sk") && rec.has("ct") && rec.has("ss")) {
        const auto ss = mlkem::decaps(level, rec.hex("sk"), rec.hex("ct"));
        const Bytes want = rec.hex("ss");
        outcome.record(std::equal(want.begin(), want.end(), ss.begin(), ss.end()), id + " decaps");
      }
      if (rec.has("sk") && rec.has("ct_n") && rec.has("ss_n")) {
        const auto ss = mlkem::decaps(level, rec.hex("sk"), rec.hex("ct_n"));
        const Bytes want = rec.hex("ss_n");
        outcome.record(std::equal(want.begin(), want.end(), ss.begin(), ss.end()),
                       id + " implicit rejection");
      }
    } catch (const Error& e) {
      outcome.record(false, id + " threw " + e.what());
    }
  }
  return outcome;
}

}  // namespace pqe2::kem
