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

// The two-VM topology used by every scenario:
//
//   vm1  10.0.10.1   gNB 172.16.1.2, xApp 172.16.1.3   IKE initiator
//   vm2  10.0.10.2   Near-RT RIC 172.16.2.34           IKE responder
//
// vm1 protects 10.0.10.1/24 and 172.16.1.0/27 towards 10.0.10.2/24 and
// 172.16.2.32/27; vm2 holds the mirrored selectors.

#include <optional>
#include <string>
#include <vector>

#include "pqe2/esp/gateway.hpp"
#include "pqe2/esp/policy.hpp"
#include "pqe2/ike/proposal.hpp"
#include "pqe2/netlab/lab.hpp"
#include "pqe2/stack/host.hpp"

namespace pqe2::stack {

inline constexpr const char* kVm1 = "vm1";
inline constexpr const char* kVm2 = "vm2";

struct Addresses {
  ike::Ipv4 vm1;
  ike::Ipv4 vm2;
  ike::Ipv4 gnb;
  ike::Ipv4 xapp;
  ike::Ipv4 ric;
};

const Addresses& addresses();

struct TestbedConfig {
  netlab::LinkSpec link;
  kem::Seed seed{};
  bool ipsec = false;
  esp::StartAction start_action = esp::StartAction::kTrap;
  std::vector<ike::Proposal> proposals;
  std::vector<ike::Proposal> esp_proposals;
  std::string psk = "pqe2 lab psk";
};

class Testbed {
 public:
  explicit Testbed(const TestbedConfig& cfg);

  netlab::Lab lab;
  Host vm1;
  Host vm2;

  /// Installs the IPsec policies (responder first). With START the
  /// initiator begins the exchange immediately.
  void install_ipsec();
  bool ipsec() const { return vm1.gateway() != nullptr; }
  /// Dispatches until the child SA is up on both sides.
  bool run_until_established(netlab::nanoseconds timeout);
  bool established() const;

 private:
  TestbedConfig cfg_;
};

/// IKE settings of one side of the testbed.
ike::IkeConfig testbed_ike_config(const TestbedConfig& cfg, ike::Role role);

}  // namespace pqe2::stack
