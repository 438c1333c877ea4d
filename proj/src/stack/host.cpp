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

#include "pqe2/stack/host.hpp"

#include <algorithm>

#include "pqe2/common/error.hpp"

namespace pqe2::stack {

Host::Host(netlab::Lab& lab, std::string endpoint) : lab_(lab), endpoint_(std::move(endpoint)) {
  if (!lab_.has_endpoint(endpoint_)) throw Error(Errc::kInvalidSpec, "no lab endpoint " + endpoint_);
  lab_.on_receive(endpoint_, [this](const netlab::Datagram& dg) { on_datagram(dg); });
}

bool Host::owns(ike::Ipv4 addr) const {
  return std::find(addresses_.begin(), addresses_.end(), addr) != addresses_.end();
}

void Host::add_route(const ike::Subnet& prefix, std::string next_endpoint) {
  routes_.emplace_back(prefix, std::move(next_endpoint));
}

const std::string& Host::next_hop(ike::Ipv4 dst) const {
  const std::pair<ike::Subnet, std::string>* best = nullptr;
  for (const auto& r : routes_) {
    if (r.first.contains(dst) && (!best || r.first.prefix > best->first.prefix)) best = &r;
  }
  if (!best) throw Error(Errc::kNoRoute, "no route to " + ike::format_ipv4(dst) + " from " + endpoint_);
  return best->second;
}

void Host::bind(ike::Ipv4 addr, uint16_t port, App app) { apps_[{addr, port}] = std::move(app); }

void Host::unbind(ike::Ipv4 addr, uint16_t port) { apps_.erase({addr, port}); }

esp::IpsecGateway& Host::attach_gateway(esp::SecurityPolicy policy, const kem::Seed& seed,
                                        std::string peer_endpoint) {
  gateway_peer_ = std::move(peer_endpoint);
  gateway_ = std::make_unique<esp::IpsecGateway>(
      lab_, std::move(policy), seed,
      [this](netlab::Proto proto, std::string detail, Bytes payload) {
        transmit(gateway_peer_, proto, detail, std::move(payload));
      },
      [this](esp::InnerPacket pkt) { deliver_local(pkt); });
  return *gateway_;
}

void Host::send_packet(const esp::InnerPacket& pkt, netlab::Proto proto, std::string detail) {
  if (owns(pkt.dst)) {
    deliver_local(pkt);
    return;
  }
  if (gateway_ && gateway_->outbound(pkt)) return;
  transmit(next_hop(pkt.dst), proto, detail, esp::encode(pkt));
}

void Host::transmit(const std::string& next, netlab::Proto proto, const std::string& detail, Bytes payload) {
  const size_t room = lab_.link(endpoint_, next).mtu - netlab::kDatagramOverhead;
  if (payload.size() <= room) {
    lab_.send(endpoint_, next, proto, detail, std::move(payload));
    return;
  }
  const size_t count = (payload.size() + room - 1) / room;
  if (count > 0xffff) throw Error(Errc::kMtuExceeded, "datagram too large to fragment");
  const uint32_t id = next_frag_id_++;
  for (size_t i = 0; i < count; ++i) {
    const size_t off = i * room;
    const size_t len = std::min(room, payload.size() - off);
    Bytes piece(payload.begin() + off, payload.begin() + off + len);
    const netlab::IpFragment frag{id, static_cast<uint16_t>(i), static_cast<uint16_t>(count)};
    lab_.send(endpoint_, next, proto, detail + " ipfrag " + std::to_string(i + 1) + "/" + std::to_string(count),
              std::move(piece), frag);
  }
}

void Host::on_datagram(const netlab::Datagram& dg) {
  if (dg.frag.count <= 1) {
    dispatch(dg, dg.payload);
    return;
  }
  Partial& p = partial_[{dg.src, dg.frag.id}];
  if (p.pieces.empty()) p.pieces.resize(dg.frag.count);
  if (dg.frag.index >= p.pieces.size() || p.pieces[dg.frag.index]) return;
  p.pieces[dg.frag.index] = dg.payload;
  if (++p.have < p.pieces.size()) return;
  Bytes whole;
  for (auto& piece : p.pieces) whole.insert(whole.end(), piece->begin(), piece->end());
  partial_.erase({dg.src, dg.frag.id});
  dispatch(dg, std::move(whole));
}

void Host::dispatch(const netlab::Datagram& dg, Bytes payload) {
  netlab::Datagram whole = dg;
  whole.payload = std::move(payload);
  switch (dg.proto) {
    case netlab::Proto::kIke:
      if (gateway_) gateway_->inbound_ike(whole);
      return;
    case netlab::Proto::kEsp:
      if (gateway_) {
        gateway_->inbound_esp(whole);
      } else {
        ++undeliverable_;
      }
      return;
    case netlab::Proto::kPlain:
    case netlab::Proto::kE2: break;
  }
  try {
    deliver_local(esp::decode_inner(whole.payload));
  } catch (const Error&) {
    ++undeliverable_;
  }
}

void Host::deliver_local(const esp::InnerPacket& pkt) {
  auto it = apps_.find({pkt.dst, pkt.port});
  if (it == apps_.end()) {
    ++undeliverable_;
    return;
  }
  App app = it->second;
  app(pkt);
}

}  // namespace pqe2::stack
