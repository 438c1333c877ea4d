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

#include "pqe2/netlab/lab.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "pqe2/common/error.hpp"

namespace pqe2::netlab {
namespace {

using namespace std::chrono_literals;

kem::Seed seed_of(std::string_view label) { return kem::derive_seed(kem::Seed{}, label); }

LinkSpec spec(nanoseconds latency, nanoseconds jitter, size_t mtu = 1400, double loss = 0.0) {
  return LinkSpec{latency, jitter, mtu, loss};
}

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kIoError;
}

TEST(LinkSpecTest, DefaultsMatchTheCalibratedLan) {
  const LinkSpec d;
  EXPECT_EQ(d.latency, 50us);
  EXPECT_EQ(d.jitter, 5us);
  EXPECT_EQ(d.mtu, 1400u);
  EXPECT_EQ(d.loss_rate, 0.0);
  EXPECT_NO_THROW(validate(d));
}

TEST(LinkSpecTest, RejectsBrokenInvariants) {
  EXPECT_EQ(error_of([] { validate(spec(-1ns, 0ns)); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { validate(spec(10us, 11us)); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { validate(spec(10us, 0us, 1400, 1.0)); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { validate(spec(10us, 0us, 1400, -0.1)); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { validate(spec(10us, 0us, 575)); }), Errc::kInvalidSpec);
  EXPECT_NO_THROW(validate(spec(0ns, 0ns, 576, 0.99)));
}

TEST(MakeLabTest, RejectsBadTopologies) {
  EXPECT_EQ(error_of([] { Lab lab(Topology{{"a", "b", "c"}, {{"a", "b", LinkSpec{}}}, {}}); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { Lab lab(Topology{{"a", "a"}, {}, {}}); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { Lab lab(Topology{{"a", "b"}, {{"a", "x", LinkSpec{}}}, {}}); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { Lab lab(Topology{{"a", "b"}, {{"a", "b", spec(1us, 2us)}}, {}}); }), Errc::kInvalidSpec);
  EXPECT_EQ(error_of([] { Lab lab(Topology{{}, {}, {}}); }), Errc::kInvalidSpec);
}

TEST(LabTest, EmptyRunHasEmptyLog) {
  Lab lab(pair_topology("a", "b", LinkSpec{}, seed_of("empty")));
  lab.run_for(100us);
  EXPECT_TRUE(lab.capture_log().empty());
}

TEST(LabTest, DeliveryHonoursTheDelayContract) {
  Lab lab(pair_topology("a", "b", spec(1ms, 0ns), seed_of("delay")));
  lab.send("a", "b", Proto::kPlain, "probe", Bytes(100, 0x5a));
  auto dg = lab.recv("b", 10ms);
  ASSERT_TRUE(dg.has_value());
  EXPECT_EQ(dg->payload, Bytes(100, 0x5a));
  EXPECT_EQ(dg->deliver_ns - dg->sent_ns, 1'000'000);
  EXPECT_GE(lab.now_ns(), dg->deliver_ns);

  const auto log = lab.capture_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].direction, Direction::kSend);
  EXPECT_EQ(log[0].endpoint, "a");
  EXPECT_EQ(log[1].direction, Direction::kRecv);
  EXPECT_EQ(log[1].endpoint, "b");
  EXPECT_EQ(log[1].ts_ns - log[0].ts_ns, 1'000'000);
  EXPECT_EQ(log[0].corr_id, log[1].corr_id);
  EXPECT_EQ(log[1].size, 100u);
}

TEST(LabTest, RecvTimesOutWithoutTraffic) {
  Lab lab(pair_topology("a", "b", LinkSpec{}, seed_of("quiet")));
  EXPECT_FALSE(lab.recv("b", 200us).has_value());
}

TEST(LabTest, MtuCountsDatagramFraming) {
  Lab lab(pair_topology("a", "b", LinkSpec{}, seed_of("mtu")));
  EXPECT_EQ(error_of([&] { lab.send("a", "b", Proto::kPlain, "", Bytes(2000)); }), Errc::kMtuExceeded);
  EXPECT_EQ(error_of([&] { lab.send("a", "b", Proto::kPlain, "", Bytes(1400 - kDatagramOverhead + 1)); }),
            Errc::kMtuExceeded);
  EXPECT_NO_THROW(lab.send("a", "b", Proto::kPlain, "", Bytes(1400 - kDatagramOverhead)));
}

TEST(LabTest, OnlyDirectLinksRoute) {
  Lab lab(Topology{{"a", "b", "c"}, {{"a", "b", LinkSpec{}}, {"b", "c", LinkSpec{}}}, seed_of("line")});
  EXPECT_EQ(error_of([&] { lab.send("a", "c", Proto::kPlain, "", {}); }), Errc::kNoRoute);
  EXPECT_EQ(error_of([&] { lab.send("a", "zz", Proto::kPlain, "", {}); }), Errc::kNoRoute);
  EXPECT_NO_THROW(lab.send("c", "b", Proto::kPlain, "", {}));
}

TEST(LabTest, LinksDeliverInOrderDespiteJitter) {
  Lab lab(pair_topology("a", "b", spec(50us, 50us), seed_of("fifo")));
  std::vector<uint32_t> got;
  lab.on_receive("b", [&](const Datagram& dg) {
    ByteReader r(dg.payload);
    got.push_back(r.u32());
  });
  for (uint32_t i = 0; i < 300; ++i) {
    ByteWriter w;
    w.u32(i);
    lab.send("a", "b", Proto::kPlain, "seq", std::move(w).take());
  }
  ASSERT_TRUE(lab.run_until([&] { return got.size() == 300; }, 1s));
  for (uint32_t i = 0; i < 300; ++i) ASSERT_EQ(got[i], i);
}

// Binomial(1000, 0.5): mean 500, sigma sqrt(250).
TEST(LabTest, LossFollowsTheConfiguredRate) {
  Lab lab(pair_topology("a", "b", spec(0ns, 0ns, 1400, 0.5), seed_of("loss")));
  size_t delivered = 0;
  lab.on_receive("b", [&](const Datagram&) { ++delivered; });
  for (int i = 0; i < 1000; ++i) lab.send("a", "b", Proto::kPlain, "", {});
  lab.run_for(1ms);
  const double sigma = std::sqrt(1000 * 0.5 * 0.5);
  EXPECT_NEAR(static_cast<double>(delivered), 500.0, 5 * sigma);

  size_t recv_events = 0;
  for (const auto& e : lab.capture_log()) recv_events += e.direction == Direction::kRecv;
  EXPECT_EQ(recv_events, delivered);
}

TEST(LabTest, SameSeedSameLossPattern) {
  auto pattern = [](std::string_view label) {
    Lab lab(pair_topology("a", "b", spec(0ns, 0ns, 1400, 0.3), seed_of(label)));
    std::vector<uint64_t> ids;
    lab.on_receive("b", [&](const Datagram& dg) { ids.push_back(dg.corr_id); });
    for (int i = 0; i < 200; ++i) lab.send("a", "b", Proto::kPlain, "", {});
    lab.run_for(500us);
    return ids;
  };
  EXPECT_EQ(pattern("p"), pattern("p"));
  EXPECT_NE(pattern("p"), pattern("q"));
}

TEST(LabTest, CaptureIsCausal) {
  const LinkSpec s = spec(40us, 10us);
  Lab lab(pair_topology("a", "b", s, seed_of("causal")));
  int echoes = 0;
  lab.on_receive("b", [&](const Datagram& dg) { lab.send("b", "a", Proto::kEsp, "echo", dg.payload); });
  lab.on_receive("a", [&](const Datagram&) { ++echoes; });
  for (int i = 0; i < 50; ++i) lab.send("a", "b", Proto::kEsp, "ping", Bytes(64, 1));
  ASSERT_TRUE(lab.run_until([&] { return echoes == 50; }, 1s));

  const auto log = lab.capture_log();
  std::map<uint64_t, int64_t> sent;
  std::map<std::pair<std::string, Direction>, int64_t> last;
  for (const auto& e : log) {
    auto& prev = last[{e.endpoint, e.direction}];
    EXPECT_GE(e.ts_ns, prev);
    prev = e.ts_ns;
    if (e.direction == Direction::kSend) {
      sent[e.corr_id] = e.ts_ns;
      continue;
    }
    ASSERT_TRUE(sent.count(e.corr_id)) << "RECV without earlier SEND, corr " << e.corr_id;
    EXPECT_GE(e.ts_ns, sent[e.corr_id] + (s.latency - s.jitter).count());
  }
  EXPECT_EQ(log.size(), 200u);
}

TEST(LabTest, TimersFireInOrderAndCancel) {
  Lab lab(pair_topology("a", "b", LinkSpec{}, seed_of("timers")));
  std::vector<int> fired;
  const int64_t t0 = lab.now_ns();
  int64_t fired_at = 0;
  lab.schedule_after(300us, [&] {
    fired.push_back(2);
    fired_at = lab.now_ns();
  });
  lab.schedule_after(100us, [&] { fired.push_back(1); });
  const auto dropped = lab.schedule_after(200us, [&] { fired.push_back(99); });
  lab.cancel(dropped);
  EXPECT_EQ(lab.pending(), 2u);
  EXPECT_TRUE(lab.run_until([&] { return fired.size() == 2; }, 10ms));
  EXPECT_EQ(fired, (std::vector<int>{1, 2}));
  EXPECT_GE(fired_at - t0, 300'000);
  EXPECT_EQ(lab.pending(), 0u);
  EXPECT_FALSE(lab.run_until([] { return false; }, 10ms));
}

TEST(LabTest, ZeroLatencyRoundTripIsProcessingOnly) {
  Lab lab(pair_topology("a", "b", spec(0ns, 0ns), seed_of("null")));
  lab.on_receive("b", [&](const Datagram& dg) { lab.send("b", "a", Proto::kPlain, "pong", dg.payload); });
  const int64_t t0 = lab.now_ns();
  lab.send("a", "b", Proto::kPlain, "ping", {});
  ASSERT_TRUE(lab.recv("a", 10ms).has_value());
  EXPECT_LT(lab.now_ns() - t0, 50'000);
}

// 62.5 us each way reproduces the 125 us plain round trip used as the
// no-IPsec calibration point.
TEST(LabTest, CalibratedRoundTrip) {
  Lab lab(pair_topology("a", "b", spec(62'500ns, 0ns), seed_of("calib")));
  lab.on_receive("b", [&](const Datagram& dg) { lab.send("b", "a", Proto::kPlain, "pong", dg.payload); });
  std::vector<int64_t> rtts;
  for (int i = 0; i < 20; ++i) {
    const int64_t t0 = lab.now_ns();
    lab.send("a", "b", Proto::kPlain, "ping", Bytes(16));
    ASSERT_TRUE(lab.recv("a", 10ms).has_value());
    rtts.push_back(lab.now_ns() - t0);
  }
  std::sort(rtts.begin(), rtts.end());
  EXPECT_GE(rtts.front(), 125'000);
  EXPECT_LT(rtts[rtts.size() / 2], 125'000 + 50'000);
}

TEST(CaptureCsvTest, HeaderAndRoundTrip) {
  std::vector<CaptureEvent> events{
      {0, "vm1", Direction::kSend, Proto::kIke, "IKE_SA_INIT request", 312, 1},
      {51'000, "vm2", Direction::kRecv, Proto::kIke, "IKE_SA_INIT request", 312, 1},
      {90'000, "vm2", Direction::kSend, Proto::kE2, "", 0, 2},
  };
  std::ostringstream out;
  write_capture_csv(out, events);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "ts_ns,endpoint,direction,proto,detail,size,corr_id");
  EXPECT_NE(text.find("51000,vm2,RECV,IKE,IKE_SA_INIT request,312,1\n"), std::string::npos);
  std::istringstream in(text);
  EXPECT_EQ(read_capture_csv(in), events);
}

TEST(CaptureCsvTest, RejectsForeignFiles) {
  std::istringstream bad_header("ts,endpoint\n");
  EXPECT_THROW(read_capture_csv(bad_header), Error);
  std::istringstream bad_proto("ts_ns,endpoint,direction,proto,detail,size,corr_id\n1,a,SEND,UDP,x,1,1\n");
  EXPECT_THROW(read_capture_csv(bad_proto), Error);
}

}  // namespace
}  // namespace pqe2::netlab
