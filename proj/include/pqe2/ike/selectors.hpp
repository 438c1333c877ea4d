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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pqe2/common/bytes.hpp"

namespace pqe2::ike {

using Ipv4 = uint32_t;

Ipv4 parse_ipv4(std::string_view text);
std::string format_ipv4(Ipv4 addr);

/// IPv4 prefix. Host bits in `addr` are kept as written ("10.0.10.1/24")
/// and ignored when matching.
struct Subnet {
  Ipv4 addr = 0;
  uint8_t prefix = 32;

  bool contains(Ipv4 ip) const;
  bool contains(const Subnet& other) const;
  friend bool operator==(const Subnet&, const Subnet&) = default;
};

Subnet parse_subnet(std::string_view text);
std::string format_subnet(const Subnet& s);
/// Comma-separated, e.g. "10.0.10.1/24, 172.16.1.0/27".
std::vector<Subnet> parse_subnet_list(std::string_view text);
std::string format_subnet_list(const std::vector<Subnet>& list);

struct TrafficSelectors {
  std::vector<Subnet> local;
  std::vector<Subnet> remote;

  /// src in some local prefix and dst in some remote prefix.
  bool matches(Ipv4 src, Ipv4 dst) const;
  TrafficSelectors mirrored() const { return {remote, local}; }
  friend bool operator==(const TrafficSelectors&, const TrafficSelectors&) = default;
};

/// [u8 count] then per prefix [u32 addr][u8 prefix].
Bytes encode_subnets(const std::vector<Subnet>& list);
std::vector<Subnet> decode_subnets(ByteView data);

/// Every prefix in `offered` lies inside some prefix of `allowed`.
bool covered_by(const std::vector<Subnet>& offered, const std::vector<Subnet>& allowed);

}  // namespace pqe2::ike
