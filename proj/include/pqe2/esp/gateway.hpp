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

// One host's IPsec gateway: the IKE SA driven over a lab link, the child
// SA's tunnel endpoint and the trap queue. The owning host hands it every
// outbound packet and every inbound IKE/ESP datagram.

#include <deque>
#include <functional>
#include <optional>
#include <string>

#include "pqe2/esp/esp.hpp"
#include "pqe2/esp/policy.hpp"
#include "pqe2/ike/sa.hpp"
#include "pqe2/netlab/lab.hpp"

namespace pqe2::esp {

/// Capture label of an IKE datagram, e.g. "IKE_SA_INIT response frag 2/3".
std::string ike_detail(const ike::IkeMessage& msg);

struct GatewayCounters {
  size_t sealed = 0;
  size_t opened = 0;
  size_t dropped = 0;
  size_t auth_failures = 0;
  size_t replays = 0;
  size_t unknown_spi = 0;
};

class IpsecGateway {
 public:
  using Transmit = std::function<void(netlab::Proto proto, std::string detail, Bytes payload)>;
  using Deliver = std::function<void(InnerPacket pkt)>;

  IpsecGateway(netlab::Lab& lab, SecurityPolicy policy, const kem::Seed& seed, Transmit transmit, Deliver deliver);

  IpsecGateway(const IpsecGateway&) = delete;
  IpsecGateway& operator=(const IpsecGateway&) = delete;

  /// Initiator: START begins the exchange now, TRAP waits for traffic.
  /// Responder: starts answering IKE requests.
  void install();
  bool installed() const { return installed_; }

  /// True when the gateway took the packet (sealed, held or dropped);
  /// false means the caller forwards it in plaintext. A responder has no
  /// outbound policy until its child SA exists.
  bool outbound(const InnerPacket& pkt);

  void inbound_ike(const netlab::Datagram& dg);
  void inbound_esp(const netlab::Datagram& dg);

  TunnelStatus status() const;
  ike::Role role() const { return policy_.ike.role; }
  const SecurityPolicy& policy() const { return policy_; }
  const std::optional<ike::IkeSaState>& sa() const { return sa_; }
  const std::optional<TunnelEndpoint>& tunnel() const { return tunnel_; }
  std::optional<ike::IkeFailure> failure() const;
  size_t queued() const { return queue_.size(); }
  const GatewayCounters& counters() const { return counters_; }
  /// Lab time at which the child SA was installed.
  std::optional<int64_t> established_ns() const { return established_ns_; }

  std::function<void()> on_established;
  std::function<void(const ike::IkeFailure&)> on_failure;

 private:
  void initiate();
  void apply(ike::StepResult result);
  void seal_and_send(const InnerPacket& pkt);

  netlab::Lab& lab_;
  SecurityPolicy policy_;
  kem::Seed seed_;
  Transmit transmit_;
  Deliver deliver_;
  bool installed_ = false;
  std::optional<ike::IkeSaState> sa_;
  std::optional<TunnelEndpoint> tunnel_;
  std::deque<InnerPacket> queue_;
  netlab::Lab::TimerId timer_ = 0;
  GatewayCounters counters_;
  std::optional<int64_t> established_ns_;
};

}  // namespace pqe2::esp
