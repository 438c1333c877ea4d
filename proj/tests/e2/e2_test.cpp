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

#include <gtest/gtest.h>

#include "pqe2/common/error.hpp"
#include "pqe2/e2/agents.hpp"
#include "pqe2/e2/message.hpp"
#include "support/testbed_util.hpp"

namespace pqe2::e2 {
namespace {

using namespace std::chrono_literals;
using stack::addresses;

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kIoError;
}

TEST(E2MessageTest, BitExactFraming) {
  E2Message m{Kind::kSubReq, 0x01020304, {}};
  m.add("metric", "DRB.UEThpDl");
  m.add("period_ms", "100");
  const std::string want = "03" "01020304" "0002"
                           "06" "6d6574726963" "000b" "4452422e5545546870446c"
                           "09" "706572696f645f6d73" "0003" "313030";
  EXPECT_EQ(to_hex(encode(m)), want);
  EXPECT_EQ(decode_e2(from_hex(want)), m);
}

TEST(E2MessageTest, RejectsMalformedInput) {
  EXPECT_EQ(error_of([] { decode_e2(from_hex("0100000001")); }), Errc::kDecodeError);
  EXPECT_EQ(error_of([] { decode_e2(from_hex("08000000010000")); }), Errc::kDecodeError);
  EXPECT_EQ(error_of([] { decode_e2(from_hex("0000000001000000")); }), Errc::kDecodeError);
  EXPECT_EQ(error_of([] { decode_e2(from_hex("05000000010000ff")); }), Errc::kDecodeError);
  EXPECT_EQ(error_of([] { decode_e2(from_hex("050000000100010161")); }), Errc::kDecodeError);
}

TEST(E2MessageTest, KindNames) {
  EXPECT_EQ(kind_name(Kind::kXappConnectAck), "XAPP_CONNECT_ACK");
  EXPECT_EQ(kind_name(Kind::kIndication), "INDICATION");
}

TEST(EmitIndicationTest, CarriesExactlyTheSubscribedMetrics) {
  GnbState st{kem::derive_seed({}, "gnb"), {}};
  const Subscription sub{7, {"A", "B"}, 100ms};
  const E2Message m = emit_indication(st, sub);
  EXPECT_EQ(m.kind, Kind::kIndication);
  EXPECT_EQ(m.txn_id, 7u);
  EXPECT_EQ(m.keys(), (std::vector<std::string>{"A", "B"}));
}

TEST(EmitIndicationTest, FixedSeedFixedValues) {
  const Subscription sub{1, default_metrics(), 100ms};
  GnbState a{kem::derive_seed({}, "gnb"), {}}, b = a, c{kem::derive_seed({}, "other"), {}};
  std::vector<Bytes> va, vb, vc;
  for (int i = 0; i < 20; ++i) {
    va.push_back(encode(emit_indication(a, sub)));
    vb.push_back(encode(emit_indication(b, sub)));
    vc.push_back(encode(emit_indication(c, sub)));
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va[0], va[1]);
}

struct E2Bed {
  explicit E2Bed(const stack::TestbedConfig& cfg)
      : tb(cfg),
        ric(tb.vm2, addresses().ric),
        gnb(tb.vm1, addresses().gnb, addresses().ric, kem::derive_seed(cfg.seed, "gnb")),
        xapp(tb.vm1, addresses().xapp, addresses().ric) {}
  stack::Testbed tb;
  NearRtRic ric;
  GnbAgent gnb;
  XappClient xapp;
};

TEST(E2SetupTest, AssociatesOnTheRicPort) {
  E2Bed bed(testing::plain_testbed("setup"));
  bed.gnb.e2_setup();
  EXPECT_TRUE(bed.gnb.associated());
  EXPECT_EQ(bed.ric.associations(), 1u);
  const auto log = bed.tb.lab.capture_log();
  ASSERT_GE(log.size(), 4u);
  EXPECT_EQ(log[0].detail, "E2_SETUP_REQ");
  EXPECT_EQ(log[0].endpoint, "vm1");
  EXPECT_EQ(log[3].detail, "E2_SETUP_RESP");
}

TEST(E2SetupTest, SecondSetupIsRejected) {
  E2Bed bed(testing::plain_testbed("setup2"));
  bed.gnb.e2_setup();
  EXPECT_EQ(error_of([&] { bed.gnb.e2_setup(); }), Errc::kSetupRejected);
}

TEST(E2SetupTest, TimesOutWithoutRic) {
  stack::Testbed tb(testing::plain_testbed("noric"));
  GnbAgent gnb(tb.vm1, addresses().gnb, addresses().ric, {});
  const int64_t t0 = tb.lab.now_ns();
  EXPECT_EQ(error_of([&] { gnb.e2_setup(30ms); }), Errc::kConnectTimeout);
  EXPECT_GE(tb.lab.now_ns() - t0, 30'000'000);
}

TEST(E2SetupTest, WrongPortTimesOut) {
  stack::Testbed tb(testing::plain_testbed("port"));
  NearRtRic ric(tb.vm2, addresses().ric, 40000, 40001);
  GnbAgent gnb(tb.vm1, addresses().gnb, addresses().ric, {});
  EXPECT_EQ(error_of([&] { gnb.e2_setup(10ms); }), Errc::kConnectTimeout);
}

TEST(XappTest, ConnectsOnE42Port) {
  E2Bed bed(testing::plain_testbed("xapp"));
  const XappRunRecord rec = bed.xapp.connect();
  EXPECT_TRUE(bed.xapp.connected());
  EXPECT_EQ(bed.ric.xapps(), 1u);
  const XappRunRecord done = complete_record(rec, bed.tb.lab.capture_log(), "vm2");
  ASSERT_TRUE(done.first_packet_ts.has_value());
  EXPECT_GE(*done.first_packet_ts, done.start_ts);

  stack::Testbed tb(testing::plain_testbed("e42"));
  NearRtRic ric(tb.vm2, addresses().ric, kRicPort, 40001);
  XappClient lost(tb.vm1, addresses().xapp, addresses().ric);
  EXPECT_EQ(error_of([&] { lost.connect(10ms); }), Errc::kConnectTimeout);
}

TEST(XappTest, EqualTimestampsGiveZeroDelay) {
  const XappRunRecord rec = complete_record(
      {5, std::nullopt}, {{5, "vm2", netlab::Direction::kSend, netlab::Proto::kE2, "XAPP_CONNECT_ACK", 7, 1}}, "vm2");
  EXPECT_EQ(*rec.first_packet_ts - rec.start_ts, 0);
}

TEST(XappTest, TrapModeSendsIkeBeforeXappBytes) {
  E2Bed bed(testing::ipsec_testbed(kem::KemParamSet::kMlKem768, esp::StartAction::kTrap, "xapp-trap"));
  bed.tb.install_ipsec();
  const XappRunRecord started = bed.xapp.connect();
  const XappRunRecord rec = complete_record(started, bed.tb.lab.capture_log(), "vm2");
  const auto log = bed.tb.lab.capture_log();
  ASSERT_FALSE(log.empty());
  EXPECT_EQ(log.front().proto, netlab::Proto::kIke);
  int64_t established = -1;
  for (const auto& e : log) {
    if (e.proto == netlab::Proto::kIke && e.detail.rfind("CREATE_CHILD_SA response", 0) == 0 &&
        e.direction == netlab::Direction::kRecv) {
      established = e.ts_ns;
    }
    if (e.proto == netlab::Proto::kEsp || e.proto == netlab::Proto::kE2) {
      EXPECT_EQ(e.proto, netlab::Proto::kEsp);
      EXPECT_GE(established, 0);
    }
  }
  ASSERT_TRUE(rec.first_packet_ts.has_value());
  EXPECT_GT(*rec.first_packet_ts, established);
}

TEST(SubscribeTest, IndicationCadence) {
  E2Bed bed(testing::plain_testbed("cadence"));
  bed.gnb.e2_setup();
  bed.xapp.connect();
  const Subscription sub = bed.xapp.subscribe({"DRB.UEThpDl"}, 20ms);
  EXPECT_EQ(sub.id, 1u);
  bed.tb.lab.run_for(1s);
  const size_t n = bed.xapp.indications().size();
  EXPECT_GE(n, 49u);
  EXPECT_LE(n, 51u);
  for (const auto& ind : bed.xapp.indications()) {
    EXPECT_EQ(ind.sub_id, sub.id);
    EXPECT_EQ(ind.msg.keys(), (std::vector<std::string>{"DRB.UEThpDl"}));
  }
}

TEST(SubscribeTest, RejectsEmptyAndUnknownMetrics) {
  E2Bed bed(testing::plain_testbed("reject"));
  bed.gnb.e2_setup();
  bed.xapp.connect();
  EXPECT_EQ(error_of([&] { bed.xapp.subscribe({}, 100ms); }), Errc::kSubscriptionRejected);
  EXPECT_EQ(error_of([&] { bed.xapp.subscribe({"RRU.PrbUsedDl"}, 100ms); }), Errc::kSubscriptionRejected);
  EXPECT_EQ(error_of([&] { bed.xapp.subscribe({"DRB.UEThpDl"}, 0ms); }), Errc::kSubscriptionRejected);
  EXPECT_NO_THROW(bed.xapp.subscribe({"DRB.UEThpDl"}, 100ms));
}

TEST(SubscribeTest, TwoSubscriptionsAreIndependent) {
  E2Bed bed(testing::plain_testbed("two"));
  bed.gnb.e2_setup();
  bed.xapp.connect();
  const Subscription a = bed.xapp.subscribe({"DRB.UEThpDl"}, 20ms);
  const Subscription b = bed.xapp.subscribe({"DRB.UEThpUl", "DRB.UEThpDl"}, 50ms);
  EXPECT_NE(a.id, b.id);
  bed.tb.lab.run_for(500ms);
  size_t na = 0, nb = 0;
  for (const auto& ind : bed.xapp.indications()) {
    if (ind.sub_id == a.id) {
      ++na;
      EXPECT_EQ(ind.msg.keys(), a.metrics);
    } else {
      ++nb;
      EXPECT_EQ(ind.msg.keys(), b.metrics);
    }
  }
  EXPECT_NEAR(static_cast<double>(na), 25.0, 1.0);
  EXPECT_NEAR(static_cast<double>(nb), 10.0, 1.0);
}

// Same seeds, different transport: the E2 payloads must not change.
TEST(SubscribeTest, WorkloadIsIndependentOfTheTunnel) {
  auto run = [](stack::TestbedConfig cfg) {
    cfg.seed = kem::derive_seed({}, "workload");
    E2Bed bed(cfg);
    bed.tb.install_ipsec();
    bed.gnb.e2_setup();
    bed.xapp.connect();
    bed.xapp.subscribe(default_metrics(), 10ms);
    bed.tb.lab.run_until([&] { return bed.xapp.indications().size() >= 10; }, 1s);
    std::vector<Bytes> out;
    for (size_t i = 0; i < 10; ++i) out.push_back(encode(bed.xapp.indications()[i].msg));
    return out;
  };
  const auto plain = run(testing::plain_testbed("x"));
  const auto tunneled = run(testing::ipsec_testbed(kem::KemParamSet::kMlKem1024, esp::StartAction::kTrap, "x"));
  ASSERT_EQ(plain.size(), 10u);
  EXPECT_EQ(plain, tunneled);
}

}  // namespace
}  // namespace pqe2::e2
