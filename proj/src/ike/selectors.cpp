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

#include "pqe2/ike/selectors.hpp"

#include <algorithm>
#include <charconv>

namespace pqe2::ike {

namespace {

uint32_t mask(uint8_t prefix) { return prefix == 0 ? 0 : ~uint32_t{0} << (32 - prefix); }

std::string_view strip(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

unsigned parse_uint(std::string_view s, unsigned max, std::string_view what) {
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v > max) {
    throw Error(Errc::kMalformedString, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Ipv4 parse_ipv4(std::string_view text) {
  Ipv4 out = 0;
  for (int i = 0; i < 4; ++i) {
    const auto dot = text.find('.');
    if ((i < 3) == (dot == std::string_view::npos)) {
      throw Error(Errc::kMalformedString, "bad IPv4 address '" + std::string(text) + "'");
    }
    out = (out << 8) | parse_uint(text.substr(0, dot), 255, "IPv4 octet");
    if (dot != std::string_view::npos) text.remove_prefix(dot + 1);
  }
  return out;
}

std::string format_ipv4(Ipv4 addr) {
  return std::to_string(addr >> 24) + "." + std::to_string((addr >> 16) & 0xff) + "." +
         std::to_string((addr >> 8) & 0xff) + "." + std::to_string(addr & 0xff);
}

bool Subnet::contains(Ipv4 ip) const { return (ip & mask(prefix)) == (addr & mask(prefix)); }

bool Subnet::contains(const Subnet& other) const { return other.prefix >= prefix && contains(other.addr); }

Subnet parse_subnet(std::string_view text) {
  text = strip(text);
  const auto slash = text.find('/');
  Subnet s;
  s.addr = parse_ipv4(text.substr(0, slash));
  if (slash != std::string_view::npos) {
    s.prefix = static_cast<uint8_t>(parse_uint(text.substr(slash + 1), 32, "prefix length"));
  }
  return s;
}

std::string format_subnet(const Subnet& s) { return format_ipv4(s.addr) + "/" + std::to_string(s.prefix); }

std::vector<Subnet> parse_subnet_list(std::string_view text) {
  std::vector<Subnet> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_subnet(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_subnet_list(const std::vector<Subnet>& list) {
  std::string out;
  for (const Subnet& s : list) {
    if (!out.empty()) out += ", ";
    out += format_subnet(s);
  }
  return out;
}

bool TrafficSelectors::matches(Ipv4 src, Ipv4 dst) const {
  const auto has = [](const std::vector<Subnet>& list, Ipv4 ip) {
    return std::any_of(list.begin(), list.end(), [ip](const Subnet& s) { return s.contains(ip); });
  };
  return has(local, src) && has(remote, dst);
}

Bytes encode_subnets(const std::vector<Subnet>& list) {
  if (list.empty() || list.size() > 255) throw Error(Errc::kLengthOverflow, "selector count");
  ByteWriter w;
  w.u8(static_cast<uint8_t>(list.size()));
  for (const Subnet& s : list) {
    w.u32(s.addr);
    w.u8(s.prefix);
  }
  return std::move(w).take();
}

std::vector<Subnet> decode_subnets(ByteView data) {
  ByteReader r(data);
  const uint8_t n = r.u8();
  if (n == 0) throw Error(Errc::kDecodeError, "empty selector list");
  std::vector<Subnet> out(n);
  for (Subnet& s : out) {
    s.addr = r.u32();
    s.prefix = r.u8();
    if (s.prefix > 32) throw Error(Errc::kDecodeError, "prefix length");
  }
  if (!r.empty()) throw Error(Errc::kDecodeError, "trailing selector bytes");
  return out;
}

bool covered_by(const std::vector<Subnet>& offered, const std::vector<Subnet>& allowed) {
  return std::all_of(offered.begin(), offered.end(), [&](const Subnet& o) {
    return std::any_of(allowed.begin(), allowed.end(), [&](const Subnet& a) { return a.contains(o); });
  });
}

}  // namespace pqe2::ike
