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

#include "pqe2/e2/agents.hpp"

#include <algorithm>
#include <functional>

#include "pqe2/common/error.hpp"

namespace pqe2::e2 {

namespace {

using namespace std::chrono_literals;

bool wait_for(netlab::Lab& lab, const std::function<bool()>& done, milliseconds timeout) {
  bool expired = false;
  const auto timer = lab.schedule_after(timeout, [&] { expired = true; });
  lab.run_until([&] { return done() || expired; }, timeout + 1s);
  lab.cancel(timer);
  return done();
}

void send_e2(stack::Host& host, ike::Ipv4 src, ike::Ipv4 dst, uint16_t port, const E2Message& msg) {
  host.send_packet(esp::InnerPacket{src, dst, port, encode(msg)}, netlab::Proto::kE2, std::string(kind_name(msg.kind)));
}

E2Message status_reply(Kind kind, uint32_t txn, bool ok, std::string_view cause = {}) {
  E2Message m{kind, txn, {}};
  m.add("status", ok ? "accepted" : "rejected");
  if (!ok) m.add("cause", cause);
  return m;
}

bool accepted(const E2Message& m) { return m.get("status") == "accepted"; }

}  // namespace

E2Message emit_indication(GnbState& state, const Subscription& sub) {
  const uint64_t k = state.emitted[sub.id]++;
  kem::SeedableRandomSource rng(kem::derive_seed(kem::derive_seed(state.seed, "sub", sub.id), "indication", k));
  E2Message m{Kind::kIndication, sub.id, {}};
  for (const std::string& metric : sub.metrics) m.add(metric, std::to_string(rng.next_u32() % 100'000));
  return m;
}

XappRunRecord complete_record(XappRunRecord record, const std::vector<netlab::CaptureEvent>& capture,
                              const std::string& ric_endpoint) {
  for (const netlab::CaptureEvent& e : capture) {
    if (e.endpoint == ric_endpoint && e.direction == netlab::Direction::kSend && e.proto != netlab::Proto::kIke &&
        e.ts_ns >= record.start_ts) {
      record.first_packet_ts = e.ts_ns;
      break;
    }
  }
  return record;
}

// Near-RT RIC

NearRtRic::NearRtRic(stack::Host& host, ike::Ipv4 addr, uint16_t e2_port, uint16_t e42_port)
    : host_(host), addr_(addr), e2_port_(e2_port), e42_port_(e42_port) {
  host_.bind(addr_, e2_port_, [this](const esp::InnerPacket& p) { on_e2(p); });
  host_.bind(addr_, e42_port_, [this](const esp::InnerPacket& p) { on_e42(p); });
}

NearRtRic::~NearRtRic() {
  host_.unbind(addr_, e2_port_);
  host_.unbind(addr_, e42_port_);
}

void NearRtRic::reply(ike::Ipv4 to, uint16_t port, const E2Message& msg) { send_e2(host_, addr_, to, port, msg); }

void NearRtRic::on_e2(const esp::InnerPacket& pkt) {
  E2Message msg;
  try {
    msg = decode_e2(pkt.payload);
  } catch (const Error&) {
    return;
  }
  switch (msg.kind) {
    case Kind::kE2SetupReq: {
      if (gnbs_.count(pkt.src)) {
        reply(pkt.src, e2_port_, status_reply(Kind::kE2SetupResp, msg.txn_id, false, "association exists"));
        return;
      }
      const auto metrics = msg.all("metric");
      gnbs_[pkt.src] = std::set<std::string>(metrics.begin(), metrics.end());
      reply(pkt.src, e2_port_, status_reply(Kind::kE2SetupResp, msg.txn_id, true));
      return;
    }
    case Kind::kSubResp: {
      auto it = pending_.find(msg.txn_id);
      if (it == pending_.end()) return;
      const Pending p = it->second;
      pending_.erase(it);
      E2Message out = msg;
      out.txn_id = p.xapp_txn;
      if (accepted(msg)) {
        subscribers_[p.sub_id] = p.xapp;
        out.add("sub_id", std::to_string(p.sub_id));
      }
      reply(p.xapp, e42_port_, out);
      return;
    }
    case Kind::kIndication: {
      auto it = subscribers_.find(msg.txn_id);
      if (it != subscribers_.end()) reply(it->second, e42_port_, msg);
      return;
    }
    default: return;
  }
}

void NearRtRic::on_e42(const esp::InnerPacket& pkt) {
  E2Message msg;
  try {
    msg = decode_e2(pkt.payload);
  } catch (const Error&) {
    return;
  }
  if (msg.kind == Kind::kXappConnect) {
    xapps_.insert(pkt.src);
    reply(pkt.src, e42_port_, E2Message{Kind::kXappConnectAck, msg.txn_id, {}});
    return;
  }
  if (msg.kind != Kind::kSubReq) return;

  const auto metrics = msg.all("metric");
  const auto period = msg.get("period_ms");
  auto reject = [&](std::string_view cause) {
    reply(pkt.src, e42_port_, status_reply(Kind::kSubResp, msg.txn_id, false, cause));
  };
  if (!xapps_.count(pkt.src)) return reject("xApp not connected");
  if (metrics.empty()) return reject("empty metric list");
  if (!period || std::atoll(period->c_str()) <= 0) return reject("period must be positive");
  auto gnb = std::find_if(gnbs_.begin(), gnbs_.end(), [&](const auto& g) {
    return std::all_of(metrics.begin(), metrics.end(), [&](const std::string& m) { return g.second.count(m) != 0; });
  });
  if (gnb == gnbs_.end()) return reject("unknown metric");

  const uint32_t sub_id = next_sub_++;
  const uint32_t txn = next_txn_++;
  pending_[txn] = Pending{pkt.src, msg.txn_id, sub_id};
  sub_gnb_[sub_id] = gnb->first;
  E2Message fwd{Kind::kSubReq, txn, {}};
  fwd.add("sub_id", std::to_string(sub_id));
  for (const std::string& m : metrics) fwd.add("metric", m);
  fwd.add("period_ms", *period);
  reply(gnb->first, e2_port_, fwd);
}

// gNB agent

GnbAgent::GnbAgent(stack::Host& host, ike::Ipv4 addr, ike::Ipv4 ric, const kem::Seed& seed,
                   std::vector<std::string> metrics, uint16_t ric_port)
    : host_(host), addr_(addr), ric_(ric), ric_port_(ric_port), metrics_(std::move(metrics)) {
  state_.seed = seed;
  host_.bind(addr_, ric_port_, [this](const esp::InnerPacket& p) { on_packet(p); });
}

GnbAgent::~GnbAgent() {
  for (const auto& [id, timer] : timers_) host_.lab().cancel(timer);
  host_.unbind(addr_, ric_port_);
}

void GnbAgent::send(const E2Message& msg) { send_e2(host_, addr_, ric_, ric_port_, msg); }

void GnbAgent::e2_setup(milliseconds timeout) {
  E2Message req{Kind::kE2SetupReq, next_txn_++, {}};
  req.add("gnb_id", ike::format_ipv4(addr_));
  for (const std::string& m : metrics_) req.add("metric", m);
  setup_reply_.reset();
  send(req);
  if (!wait_for(host_.lab(), [&] { return setup_reply_.has_value(); }, timeout)) {
    throw Error(Errc::kConnectTimeout, "no E2 setup response from " + ike::format_ipv4(ric_));
  }
  if (!accepted(*setup_reply_)) {
    throw Error(Errc::kSetupRejected, "E2 setup rejected: " + setup_reply_->get("cause").value_or("?"));
  }
  associated_ = true;
}

void GnbAgent::on_packet(const esp::InnerPacket& pkt) {
  E2Message msg;
  try {
    msg = decode_e2(pkt.payload);
  } catch (const Error&) {
    return;
  }
  if (msg.kind == Kind::kE2SetupResp) {
    setup_reply_ = msg;
    return;
  }
  if (msg.kind != Kind::kSubReq) return;

  Subscription sub;
  sub.metrics = msg.all("metric");
  sub.id = static_cast<uint32_t>(std::atoll(msg.get("sub_id").value_or("0").c_str()));
  sub.period = milliseconds(std::atoll(msg.get("period_ms").value_or("0").c_str()));
  const bool known = std::all_of(sub.metrics.begin(), sub.metrics.end(), [&](const std::string& m) {
    return std::find(metrics_.begin(), metrics_.end(), m) != metrics_.end();
  });
  if (sub.id == 0 || sub.metrics.empty() || !known || sub.period.count() <= 0 || subs_.count(sub.id)) {
    send(status_reply(Kind::kSubResp, msg.txn_id, false, "unsupported subscription"));
    return;
  }
  send(status_reply(Kind::kSubResp, msg.txn_id, true));
  const int64_t start = host_.lab().now_ns();
  subs_[sub.id] = sub;
  sub_start_[sub.id] = start;
  schedule(sub.id, start + std::chrono::nanoseconds(sub.period).count(), 1);
}

void GnbAgent::schedule(uint32_t sub_id, int64_t at_ns, uint64_t k) {
  timers_[sub_id] = host_.lab().schedule_at(at_ns, [this, sub_id, k] {
    const Subscription& sub = subs_.at(sub_id);
    send(emit_indication(state_, sub));
    ++sent_;
    const int64_t period = std::chrono::nanoseconds(sub.period).count();
    schedule(sub_id, sub_start_.at(sub_id) + static_cast<int64_t>(k + 1) * period, k + 1);
  });
}

// xApp

XappClient::XappClient(stack::Host& host, ike::Ipv4 addr, ike::Ipv4 ric, uint16_t e42_port)
    : host_(host), addr_(addr), ric_(ric), port_(e42_port) {
  host_.bind(addr_, port_, [this](const esp::InnerPacket& p) { on_packet(p); });
}

XappClient::~XappClient() { host_.unbind(addr_, port_); }

void XappClient::send(const E2Message& msg) { send_e2(host_, addr_, ric_, port_, msg); }

XappRunRecord XappClient::launch() {
  XappRunRecord rec;
  rec.start_ts = host_.lab().now_ns();
  send(E2Message{Kind::kXappConnect, next_txn_++, {}});
  return rec;
}

XappRunRecord XappClient::connect(milliseconds timeout) {
  const XappRunRecord rec = launch();
  if (!wait_for(host_.lab(), [&] { return connected_; }, timeout)) {
    throw Error(Errc::kConnectTimeout, "no XAPP_CONNECT_ACK from " + ike::format_ipv4(ric_));
  }
  return rec;
}

Subscription XappClient::subscribe(const std::vector<std::string>& metrics, milliseconds period,
                                   milliseconds timeout) {
  const uint32_t txn = next_txn_++;
  E2Message req{Kind::kSubReq, txn, {}};
  for (const std::string& m : metrics) req.add("metric", m);
  req.add("period_ms", std::to_string(period.count()));
  send(req);
  if (!wait_for(host_.lab(), [&] { return replies_.count(txn) != 0; }, timeout)) {
    throw Error(Errc::kConnectTimeout, "no SUB_RESP for txn " + std::to_string(txn));
  }
  const E2Message resp = replies_.at(txn);
  replies_.erase(txn);
  if (!accepted(resp)) {
    throw Error(Errc::kSubscriptionRejected, "subscription rejected: " + resp.get("cause").value_or("?"));
  }
  Subscription sub;
  sub.id = static_cast<uint32_t>(std::atoll(resp.get("sub_id").value_or("0").c_str()));
  sub.metrics = metrics;
  sub.period = period;
  return sub;
}

void XappClient::on_packet(const esp::InnerPacket& pkt) {
  E2Message msg;
  try {
    msg = decode_e2(pkt.payload);
  } catch (const Error&) {
    return;
  }
  switch (msg.kind) {
    case Kind::kXappConnectAck: connected_ = true; return;
    case Kind::kSubResp: replies_[msg.txn_id] = msg; return;
    case Kind::kIndication:
      indications_.push_back({msg.txn_id, host_.lab().now_ns(), std::move(msg)});
      return;
    default: return;
  }
}

}  // namespace pqe2::e2
