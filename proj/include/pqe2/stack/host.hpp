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

// A lab endpoint acting as an IP host: local addresses, static routes to
// neighbouring endpoints, (addr, port) bindings for applications, IPv4
// style fragmentation of oversized datagrams, and an optional IPsec
// gateway in the output and input paths.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pqe2/esp/esp.hpp"
#include "pqe2/esp/gateway.hpp"
#include "pqe2/ike/selectors.hpp"
#include "pqe2/netlab/lab.hpp"

namespace pqe2::stack {

class Host {
 public:
  using App = std::function<void(const esp::InnerPacket&)>;

  Host(netlab::Lab& lab, std::string endpoint);

  Host(const Host&) = delete;
  Host& operator=(const Host&) = delete;

  const std::string& endpoint() const { return endpoint_; }
  netlab::Lab& lab() { return lab_; }

  void add_address(ike::Ipv4 addr) { addresses_.push_back(addr); }
  bool owns(ike::Ipv4 addr) const;
  void add_route(const ike::Subnet& prefix, std::string next_endpoint);
  /// Longest-prefix match; throws kNoRoute.
  const std::string& next_hop(ike::Ipv4 dst) const;

  void bind(ike::Ipv4 addr, uint16_t port, App app);
  void unbind(ike::Ipv4 addr, uint16_t port);

  /// Routes one packet. `proto` and `detail` label the datagram when it
  /// leaves in plaintext; tunneled packets appear as ESP.
  void send_packet(const esp::InnerPacket& pkt, netlab::Proto proto, std::string detail);

  esp::IpsecGateway& attach_gateway(esp::SecurityPolicy policy, const kem::Seed& seed, std::string peer_endpoint);
  esp::IpsecGateway* gateway() { return gateway_.get(); }
  const esp::IpsecGateway* gateway() const { return gateway_.get(); }

  size_t undeliverable() const { return undeliverable_; }

 private:
  struct Partial {
    std::vector<std::optional<Bytes>> pieces;
    size_t have = 0;
  };

  void transmit(const std::string& next, netlab::Proto proto, const std::string& detail, Bytes payload);
  void on_datagram(const netlab::Datagram& dg);
  void dispatch(const netlab::Datagram& dg, Bytes payload);
  void deliver_local(const esp::InnerPacket& pkt);

  netlab::Lab& lab_;
  std::string endpoint_;
  std::vector<ike::Ipv4> addresses_;
  std::vector<std::pair<ike::Subnet, std::string>> routes_;
  std::map<std::pair<ike::Ipv4, uint16_t>, App> apps_;
  std::unique_ptr<esp::IpsecGateway> gateway_;
  std::string gateway_peer_;
  std::map<std::pair<std::string, uint32_t>, Partial> partial_;
  uint32_t next_frag_id_ = 1;
  size_t undeliverable_ = 0;
};

}  // namespace pqe2::stack
