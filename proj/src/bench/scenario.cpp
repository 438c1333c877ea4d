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

#include "pqe2/bench/scenario.hpp"

#include "pqe2/common/error.hpp"
#include "pqe2/crypto/primitives.hpp"
#include "pqe2/stack/testbed.hpp"

namespace pqe2::bench {

namespace {

using namespace std::chrono_literals;
using stack::addresses;

stack::TestbedConfig testbed_config(const ScenarioConfig& cfg, const kem::Seed& seed) {
  stack::TestbedConfig t;
  t.link = cfg.link;
  t.seed = seed;
  t.ipsec = cfg.security == Security::kIpsec;
  t.start_action = cfg.start_action;
  t.proposals = cfg.proposal;
  t.esp_proposals = cfg.esp_proposal;
  t.psk = cfg.psk;
  return t;
}

[[noreturn]] void fail(size_t index, const std::string& what) {
  throw Error(Errc::kProtocolFailure, "iteration " + std::to_string(index) + ": " + what);
}

std::string gateway_failure(stack::Testbed& tb) {
  for (stack::Host* h : {&tb.vm1, &tb.vm2}) {
    if (auto f = h->gateway()->failure()) return h->endpoint() + " " + f->message;
  }
  return "tunnel not established";
}

IterationResult run(const ScenarioConfig& cfg, size_t index, CaptureMode mode) {
  IterationResult out;
  out.iteration = index;
  const kem::Seed seed = kem::derive_seed(cfg.seed, "iteration", index);
  stack::Testbed tb(testbed_config(cfg, seed));
  Bytes transcript;
  tb.lab.set_tap([&](const netlab::Datagram& dg) {
    if (dg.proto == netlab::Proto::kIke) append(transcript, dg.payload);
  });

  const stack::Addresses& a = addresses();
  e2::NearRtRic ric(tb.vm2, a.ric, cfg.e2.e2_port, cfg.e2.e42_port);
  e2::XappClient xapp(tb.vm1, a.xapp, a.ric, cfg.e2.e42_port);

  const bool ipsec = cfg.security == Security::kIpsec;
  if (ipsec) {
    tb.install_ipsec();
    if (cfg.start_action == esp::StartAction::kStart && !tb.run_until_established(5s)) {
      fail(index, gateway_failure(tb));
    }
  }

  const e2::XappRunRecord started = xapp.launch();
  if (!tb.lab.run_until([&] { return xapp.connected(); }, 5s)) {
    fail(index, ipsec ? gateway_failure(tb) : "xApp connect timed out");
  }
  if (ipsec && !tb.run_until_established(5s)) fail(index, gateway_failure(tb));

  auto capture = tb.lab.capture_log();
  out.xapp = e2::complete_record(started, capture, stack::kVm2);
  if (ipsec) {
    out.phases = extract_phases(capture);
    out.sa_init_request_bytes = sa_init_request_bytes(capture);
    int64_t first_ike = -1;
    for (const auto& e : capture) {
      if (e.proto == netlab::Proto::kIke) {
        first_ike = e.ts_ns;
        break;
      }
    }
    out.handshake_total_ns = *tb.vm1.gateway()->established_ns() - first_ike;
  }
  if (mode == CaptureMode::kSetup) out.capture = std::move(capture);

  if (cfg.traffic.pingpong_messages > 0) {
    PingpongResult pp = pingpong(tb.vm2, a.vm2, tb.vm1, a.vm1, cfg.traffic.pingpong_messages, cfg.traffic.payload);
    out.pingpong_ns = std::move(pp.one_way_ns);
    out.pingpong_timeouts = pp.timeouts;
  }

  if (cfg.e2.duration.count() > 0) {
    e2::GnbAgent gnb(tb.vm1, a.gnb, a.ric, kem::derive_seed(seed, "gnb"), cfg.e2.metrics, cfg.e2.e2_port);
    gnb.e2_setup();
    const e2::Subscription sub = xapp.subscribe(cfg.e2.metrics, cfg.e2.period);
    const size_t before = xapp.indications().size();
    tb.lab.run_for(cfg.e2.duration);
    const auto& ind = xapp.indications();
    out.indications = ind.size() - before;
    for (size_t i = before + 1; i < ind.size(); ++i) {
      if (ind[i].sub_id == sub.id) {
        out.max_indication_gap_ns = std::max(out.max_indication_gap_ns, ind[i].recv_ns - ind[i - 1].recv_ns);
      }
    }
  }

  const auto digest = crypto::sha256(transcript);
  out.transcript_sha256 = to_hex(digest);
  if (mode == CaptureMode::kFull) out.capture = tb.lab.capture_log();
  return out;
}

std::vector<int64_t> to_us(const std::vector<int64_t>& ns) {
  std::vector<int64_t> out;
  out.reserve(ns.size());
  for (int64_t v : ns) out.push_back(ns_to_us(v));
  return out;
}

}  // namespace

PingpongResult pingpong(stack::Host& client, ike::Ipv4 client_addr, stack::Host& server, ike::Ipv4 server_addr,
                        size_t n, size_t payload, std::chrono::nanoseconds timeout) {
  PingpongResult out;
  netlab::Lab& lab = client.lab();
  server.bind(server_addr, kPingpongPort, [&server, server_addr](const esp::InnerPacket& p) {
    server.send_packet(esp::InnerPacket{server_addr, p.src, kPingpongPort, p.payload}, netlab::Proto::kPlain,
                       "pong");
  });
  std::optional<uint32_t> got;
  client.bind(client_addr, kPingpongPort, [&got](const esp::InnerPacket& p) {
    if (p.payload.size() >= 4) got = ByteReader(p.payload).u32();
  });
  Bytes body(std::max<size_t>(payload, 4), 0x5a);
  for (uint32_t i = 0; i < n; ++i) {
    store_be32(body.data(), i);
    got.reset();
    const int64_t t0 = lab.now_ns();
    client.send_packet(esp::InnerPacket{client_addr, server_addr, kPingpongPort, body}, netlab::Proto::kPlain,
                       "ping");
    if (lab.run_until([&] { return got == i; }, timeout)) {
      out.one_way_ns.push_back((lab.now_ns() - t0) / 2);
    } else {
      ++out.timeouts;
    }
  }
  server.unbind(server_addr, kPingpongPort);
  client.unbind(client_addr, kPingpongPort);
  return out;
}

int64_t xapp_delay(const e2::XappRunRecord& record) {
  if (!record.first_packet_ts) throw Error(Errc::kProtocolFailure, "xApp record has no first packet");
  return *record.first_packet_ts - record.start_ts;
}

IterationResult run_iteration(const ScenarioConfig& cfg, size_t index, CaptureMode capture) {
  try {
    return run(cfg, index, capture);
  } catch (const Error& e) {
    if (e.code() == Errc::kProtocolFailure) throw;
    fail(index, e.what());
  }
}

ScenarioReport run_scenario(const ScenarioConfig& cfg, CaptureMode capture) {
  ScenarioReport r;
  r.config = cfg;
  r.iterations.reserve(cfg.iterations);
  for (size_t i = 0; i < cfg.iterations; ++i) r.iterations.push_back(run_iteration(cfg, i, capture));
  return r;
}

LatencyStats phase_stats(const ScenarioReport& r, std::string_view phase) {
  std::vector<int64_t> us;
  for (const auto& it : r.iterations) {
    if (it.phases) us.push_back(ns_to_us(it.phases->get_ns(phase)));
  }
  return summarize(us);
}

LatencyStats pingpong_stats(const ScenarioReport& r) {
  std::vector<int64_t> all;
  for (const auto& it : r.iterations) {
    const auto us = to_us(it.pingpong_ns);
    all.insert(all.end(), us.begin(), us.end());
  }
  return summarize(all);
}

LatencyStats xapp_delay_stats(const ScenarioReport& r) {
  std::vector<int64_t> us;
  for (const auto& it : r.iterations) {
    if (it.xapp.first_packet_ts) us.push_back(ns_to_us(xapp_delay(it.xapp)));
  }
  return summarize(us);
}

}  // namespace pqe2::bench
