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

#include <gtest/gtest.h>

#include <sstream>

namespace pqe2::kem {
namespace {

std::filesystem::path kat_path(const std::string& name) { return std::filesystem::path(PQE2_KAT_DIR) / name; }

TEST(KatParserTest, RecordsSectionsAndFlags) {
  std::istringstream in(
      "# header\n"
      "[Keylen = 256]\n"
      "[IVlen = 96]\n"
      "\n"
      "Count = 0\n"
      "Key = 00ff\n"
      "PT = \n"
      "Count = 1\n"
      "Key = 01\n"
      "FAIL\n"
      "\n"
      "[Keylen = 128]\n"
      "\n"
      "count = 7\n"
      "# inline comment\n"
      "d = aa\n");
  const auto recs = parse_kat(in);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].hex("key"), (Bytes{0x00, 0xff}));
  EXPECT_TRUE(recs[0].hex("pt").empty());
  EXPECT_EQ(recs[0].section.at("ivlen"), "96");
  EXPECT_FALSE(recs[0].flagged("FAIL"));
  EXPECT_TRUE(recs[1].flagged("FAIL"));
  EXPECT_EQ(recs[2].text("count"), "7");
  EXPECT_EQ(recs[2].section.at("keylen"), "128");
  EXPECT_EQ(recs[2].section.count("ivlen"), 0u);
  EXPECT_THROW(recs[2].text("missing"), Error);
}

TEST(KatParserTest, MissingFile) {
  try {
    parse_kat_file("/nonexistent/kat.rsp");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIoError);
  }
}

struct KatCase {
  const char* file;
  mlkem::Level level;
  size_t min_checks;
};

class MlKemKatTest : public ::testing::TestWithParam<KatCase> {};

TEST_P(MlKemKatTest, ByteExact) {
  const KatCase& c = GetParam();
  const auto records = parse_kat_file(kat_path(c.file));
  const KatOutcome out = run_mlkem_kat(c.level, records);
  for (const auto& f : out.failures) ADD_FAILURE() << f;
  EXPECT_EQ(out.failed, 0u);
  EXPECT_GE(out.passed, c.min_checks);
}

// pq-crystals files: 20 records x (ek, dk, ct, ss, decaps, rejection).
// ACVP files: keyGen, encapsulation and decapsulation groups.
INSTANTIATE_TEST_SUITE_P(
    Files, MlKemKatTest,
    ::testing::Values(KatCase{"mlkem512.rsp", mlkem::Level::k512, 120},
                      KatCase{"mlkem768.rsp", mlkem::Level::k768, 120},
                      KatCase{"mlkem1024.rsp", mlkem::Level::k1024, 120},
                      KatCase{"mlkem512_acvp.rsp", mlkem::Level::k512, 60},
                      KatCase{"mlkem768_acvp.rsp", mlkem::Level::k768, 60},
                      KatCase{"mlkem1024_acvp.rsp", mlkem::Level::k1024, 60}),
    [](const auto& info) {
      std::string n = info.param.file;
      return n.substr(0, n.find('.'));
    });

}  // namespace
}  // namespace pqe2::kem
