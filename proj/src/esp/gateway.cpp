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

#include "pqe2/esp/gateway.hpp"

#include <cstdio>

#include "pqe2/common/error.hpp"

namespace pqe2::esp {

std::string ike_detail(const ike::IkeMessage& msg) {
  std::string out = std::string(ike::exchange_name(msg.exchange)) + " " + std::string(ike::role_name(msg.role));
  if (msg.fragment_info) {
    out += " frag " + std::to_string(msg.fragment_info->index) + "/" + std::to_string(msg.fragment_info->total);
  }
  return out;
}

IpsecGateway::IpsecGateway(netlab::Lab& lab, SecurityPolicy policy, const kem::Seed& seed, Transmit transmit,
                           Deliver deliver)
    : lab_(lab),
      policy_(std::move(policy)),
      seed_(seed),
      transmit_(std::move(transmit)),
      deliver_(std::move(deliver)) {}

void IpsecGateway::install() {
  installed_ = true;
  if (policy_.ike.role == ike::Role::kInitiator && policy_.start_action == StartAction::kStart && !sa_) initiate();
}

TunnelStatus IpsecGateway::status() const {
  if (tunnel_) return tunnel_->failed ? TunnelStatus::kFailed : TunnelStatus::kEstablished;
  if (!sa_) return TunnelStatus::kNone;
  return sa_->phase == ike::Phase::kFailed ? TunnelStatus::kFailed : TunnelStatus::kNegotiating;
}

std::optional<ike::IkeFailure> IpsecGateway::failure() const {
  if (sa_ && sa_->failure) return sa_->failure;
  return std::nullopt;
}

void IpsecGateway::initiate() {
  sa_.emplace(policy_.ike, seed_);
  apply(ike::step(std::move(*sa_), ike::StartEvent{}));
}

void IpsecGateway::apply(ike::StepResult result) {
  const bool was_up = tunnel_.has_value();
  sa_.emplace(std::move(result.state));
  for (const ike::IkeMessage& msg : result.outbound) {
    transmit_(netlab::Proto::kIke, ike_detail(msg), ike::encode(msg));
  }
  if (result.arm_timer) {
    lab_.cancel(timer_);
    const uint32_t id = *result.arm_timer;
    timer_ = lab_.schedule_after(policy_.ike.retransmit_timeout, [this, id] {
      timer_ = 0;
      if (sa_) apply(ike::step(std::move(*sa_), ike::TimeoutEvent{id}));
    });
  }
  if (result.child_keys && !was_up) {
    lab_.cancel(timer_);
    timer_ = 0;
    tunnel_.emplace(*result.child_keys);
    established_ns_ = lab_.now_ns();
    while (!queue_.empty()) {
      seal_and_send(queue_.front());
      queue_.pop_front();
    }
    if (on_established) on_established();
  }
  if (sa_->phase == ike::Phase::kFailed) {
    lab_.cancel(timer_);
    timer_ = 0;
    counters_.dropped += queue_.size();
    queue_.clear();
    if (on_failure) on_failure(*sa_->failure);
  }
}

bool IpsecGateway::outbound(const InnerPacket& pkt) {
  if (!installed_) return false;
  if (policy_.ike.role == ike::Role::kResponder && !tunnel_) return false;
  switch (trap_intercept(policy_, status(), pkt, queue_.size())) {
    case TrapAction::kSendPlain: return false;
    case TrapAction::kSeal: seal_and_send(pkt); return true;
    case TrapAction::kQueue: queue_.push_back(pkt); return true;
    case TrapAction::kQueueAndInitiate:
      queue_.push_back(pkt);
      initiate();
      return true;
    case TrapAction::kDrop: ++counters_.dropped; return true;
  }
  return true;
}

void IpsecGateway::seal_and_send(const InnerPacket& pkt) {
  const EspPacket sealed = esp_seal(*tunnel_, encode(pkt));
  ++counters_.sealed;
  char detail[40];
  std::snprintf(detail, sizeof detail, "spi=%08x seq=%u", sealed.spi, sealed.seq);
  transmit_(netlab::Proto::kEsp, detail, encode(sealed));
}

void IpsecGateway::inbound_ike(const netlab::Datagram& dg) {
  if (!installed_) return;
  ike::IkeMessage msg;
  try {
    msg = ike::decode(dg.payload);
  } catch (const Error&) {
    return;  // not ours to answer
  }
  if (!sa_) {
    if (policy_.ike.role != ike::Role::kResponder) return;
    sa_.emplace(policy_.ike, seed_);
  }
  apply(ike::step(std::move(*sa_), ike::InboundEvent{std::move(msg)}));
}

void IpsecGateway::inbound_esp(const netlab::Datagram& dg) {
  if (!tunnel_) {
    ++counters_.unknown_spi;
    return;
  }
  try {
    const EspPacket pkt = decode_esp(dg.payload);
    InnerPacket inner = decode_inner(esp_open(*tunnel_, pkt));
    ++counters_.opened;
    deliver_(std::move(inner));
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::kAuthFailed: ++counters_.auth_failures; break;
      case Errc::kReplayDetected: ++counters_.replays; break;
      case Errc::kUnknownSpi: ++counters_.unknown_spi; break;
      default: ++counters_.dropped; break;
    }
  }
}

}  // namespace pqe2::esp
