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

// gNB E2 agent, Near-RT RIC and xApp as actors on lab hosts. Each actor
// reacts to packets and timers inside the lab dispatcher; the blocking
// helpers (e2_setup, connect, subscribe) pump the dispatcher until the
// reply or the deadline.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pqe2/e2/message.hpp"
#include "pqe2/kem/drbg.hpp"
#include "pqe2/netlab/capture.hpp"
#include "pqe2/stack/host.hpp"

namespace pqe2::e2 {

using std::chrono::milliseconds;

inline const std::vector<std::string>& default_metrics() {
  static const std::vector<std::string> m{"DRB.UEThpDl", "DRB.UEThpUl"};
  return m;
}
inline constexpr milliseconds kDefaultPeriod{100};
inline constexpr milliseconds kDefaultConnectTimeout{1000};

struct Subscription {
  uint32_t id = 0;
  std::vector<std::string> metrics;
  milliseconds period{kDefaultPeriod};
};

/// Per-gNB generator state; values depend only on the seed, the
/// subscription id and the emission index.
struct GnbState {
  kem::Seed seed{};
  std::map<uint32_t, uint64_t> emitted;
};

/// Builds the next INDICATION of `sub` and advances its emission count.
E2Message emit_indication(GnbState& state, const Subscription& sub);

struct XappRunRecord {
  int64_t start_ts = 0;
  std::optional<int64_t> first_packet_ts;
};

/// Fills first_packet_ts with the first non-IKE SEND by `ric_endpoint` at
/// or after start_ts.
XappRunRecord complete_record(XappRunRecord record, const std::vector<netlab::CaptureEvent>& capture,
                              const std::string& ric_endpoint);

class NearRtRic {
 public:
  NearRtRic(stack::Host& host, ike::Ipv4 addr, uint16_t e2_port = kRicPort, uint16_t e42_port = kE42Port);
  ~NearRtRic();

  size_t associations() const { return gnbs_.size(); }
  size_t xapps() const { return xapps_.size(); }

 private:
  struct Pending {
    ike::Ipv4 xapp;
    uint32_t xapp_txn;
    uint32_t sub_id;
  };

  void on_e2(const esp::InnerPacket& pkt);
  void on_e42(const esp::InnerPacket& pkt);
  void reply(ike::Ipv4 to, uint16_t port, const E2Message& msg);

  stack::Host& host_;
  ike::Ipv4 addr_;
  uint16_t e2_port_;
  uint16_t e42_port_;
  std::map<ike::Ipv4, std::set<std::string>> gnbs_;  // address -> supported metrics
  std::set<ike::Ipv4> xapps_;
  std::map<uint32_t, Pending> pending_;               // gNB-side txn -> xApp request
  std::map<uint32_t, ike::Ipv4> subscribers_;         // sub id -> xApp
  std::map<uint32_t, ike::Ipv4> sub_gnb_;
  uint32_t next_txn_ = 1;
  uint32_t next_sub_ = 1;
};

class GnbAgent {
 public:
  GnbAgent(stack::Host& host, ike::Ipv4 addr, ike::Ipv4 ric, const kem::Seed& seed,
           std::vector<std::string> metrics = default_metrics(), uint16_t ric_port = kRicPort);
  ~GnbAgent();

  /// Throws kConnectTimeout or kSetupRejected.
  void e2_setup(milliseconds timeout = kDefaultConnectTimeout);
  bool associated() const { return associated_; }
  const std::map<uint32_t, Subscription>& subscriptions() const { return subs_; }
  size_t indications_sent() const { return sent_; }

 private:
  void on_packet(const esp::InnerPacket& pkt);
  void schedule(uint32_t sub_id, int64_t at_ns, uint64_t k);
  void send(const E2Message& msg);

  stack::Host& host_;
  ike::Ipv4 addr_;
  ike::Ipv4 ric_;
  uint16_t ric_port_;
  std::vector<std::string> metrics_;
  GnbState state_;
  bool associated_ = false;
  std::optional<E2Message> setup_reply_;
  uint32_t next_txn_ = 1;
  std::map<uint32_t, Subscription> subs_;
  std::map<uint32_t, int64_t> sub_start_;
  std::map<uint32_t, netlab::Lab::TimerId> timers_;
  size_t sent_ = 0;
};

struct IndicationRecord {
  uint32_t sub_id;
  int64_t recv_ns;
  E2Message msg;
};

class XappClient {
 public:
  XappClient(stack::Host& host, ike::Ipv4 addr, ike::Ipv4 ric, uint16_t e42_port = kE42Port);
  ~XappClient();

  /// Stamps start_ts, sends XAPP_CONNECT and waits for the ack. Throws
  /// kConnectTimeout.
  XappRunRecord connect(milliseconds timeout = kDefaultConnectTimeout);
  /// Sends XAPP_CONNECT without waiting; the ack is seen by connected().
  XappRunRecord launch();
  bool connected() const { return connected_; }

  /// Throws kSubscriptionRejected or kConnectTimeout.
  Subscription subscribe(const std::vector<std::string>& metrics, milliseconds period,
                         milliseconds timeout = kDefaultConnectTimeout);

  const std::vector<IndicationRecord>& indications() const { return indications_; }

 private:
  void on_packet(const esp::InnerPacket& pkt);
  void send(const E2Message& msg);

  stack::Host& host_;
  ike::Ipv4 addr_;
  ike::Ipv4 ric_;
  uint16_t port_;
  bool connected_ = false;
  uint32_t next_txn_ = 1;
  std::map<uint32_t, E2Message> replies_;
  std::vector<IndicationRecord> indications_;
};

}  // namespace pqe2::e2
