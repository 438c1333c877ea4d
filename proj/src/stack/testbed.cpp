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

#include "pqe2/stack/testbed.hpp"

#include "pqe2/common/error.hpp"

namespace pqe2::stack {

namespace {

constexpr const char* kVm1Local = "10.0.10.1/24, 172.16.1.0/27";
constexpr const char* kVm2Local = "10.0.10.2/24, 172.16.2.32/27";

}  // namespace

const Addresses& addresses() {
  static const Addresses a{ike::parse_ipv4("10.0.10.1"), ike::parse_ipv4("10.0.10.2"),
                           ike::parse_ipv4("172.16.1.2"), ike::parse_ipv4("172.16.1.3"),
                           ike::parse_ipv4("172.16.2.34")};
  return a;
}

ike::IkeConfig testbed_ike_config(const TestbedConfig& cfg, ike::Role role) {
  const bool init = role == ike::Role::kInitiator;
  ike::IkeConfig c;
  c.role = role;
  c.proposals = cfg.proposals;
  c.esp_proposals = cfg.esp_proposals;
  c.psk = to_bytes(cfg.psk);
  c.id = init ? kVm1 : kVm2;
  c.peer_id = init ? kVm2 : kVm1;
  c.selectors.local = ike::parse_subnet_list(init ? kVm1Local : kVm2Local);
  c.selectors.remote = ike::parse_subnet_list(init ? kVm2Local : kVm1Local);
  c.mtu = cfg.link.mtu - netlab::kDatagramOverhead;
  return c;
}

Testbed::Testbed(const TestbedConfig& cfg)
    : lab(netlab::pair_topology(kVm1, kVm2, cfg.link, kem::derive_seed(cfg.seed, "lab"))),
      vm1(lab, kVm1),
      vm2(lab, kVm2),
      cfg_(cfg) {
  const Addresses& a = addresses();
  for (ike::Ipv4 ip : {a.vm1, a.gnb, a.xapp}) vm1.add_address(ip);
  for (ike::Ipv4 ip : {a.vm2, a.ric}) vm2.add_address(ip);
  vm1.add_route(ike::parse_subnet("10.0.10.0/24"), kVm2);
  vm1.add_route(ike::parse_subnet("172.16.2.32/27"), kVm2);
  vm2.add_route(ike::parse_subnet("10.0.10.0/24"), kVm1);
  vm2.add_route(ike::parse_subnet("172.16.1.0/27"), kVm1);

  if (!cfg.ipsec) return;
  if (cfg.proposals.empty() || cfg.esp_proposals.empty()) {
    throw Error(Errc::kConfigError, "IPsec testbed needs IKE and ESP proposals");
  }
  for (ike::Role role : {ike::Role::kInitiator, ike::Role::kResponder}) {
    const bool init = role == ike::Role::kInitiator;
    esp::SecurityPolicy policy;
    policy.ike = testbed_ike_config(cfg, role);
    policy.selectors = policy.ike.selectors;
    policy.start_action = cfg.start_action;
    Host& host = init ? vm1 : vm2;
    host.attach_gateway(std::move(policy), kem::derive_seed(cfg.seed, init ? "vm1/ike" : "vm2/ike"),
                        init ? kVm2 : kVm1);
  }
}

void Testbed::install_ipsec() {
  if (!ipsec()) return;
  vm2.gateway()->install();
  vm1.gateway()->install();
}

bool Testbed::established() const {
  return ipsec() && vm1.gateway()->status() == esp::TunnelStatus::kEstablished &&
         vm2.gateway()->status() == esp::TunnelStatus::kEstablished;
}

bool Testbed::run_until_established(netlab::nanoseconds timeout) {
  return lab.run_until(
      [this] {
        return established() || !ipsec() || vm1.gateway()->status() == esp::TunnelStatus::kFailed ||
               vm2.gateway()->status() == esp::TunnelStatus::kFailed;
      },
      timeout) &&
         established();
}

}  // namespace pqe2::stack
