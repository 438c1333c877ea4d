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

#include "pqe2/ike/sa.hpp"

#include <algorithm>

#include "pqe2/crypto/primitives.hpp"

namespace pqe2::ike {

namespace {

constexpr std::string_view kKeyPad = "Key Pad for IKEv2";
constexpr size_t kIvBytes = 8;

// ---- SA payloads ----

void write_suites(ByteWriter& w, const std::vector<Proposal>& proposals) {
  if (proposals.empty() || proposals.size() > 255) throw Error(Errc::kLengthOverflow, "proposal count");
  w.u8(static_cast<uint8_t>(proposals.size()));
  for (const Proposal& p : proposals) {
    w.u8(static_cast<uint8_t>(p.aead));
    w.u8(static_cast<uint8_t>(p.prf));
    w.u16(static_cast<uint16_t>(p.kem));
  }
}

std::vector<Proposal> read_suites(ByteReader& r) {
  const uint8_t n = r.u8();
  if (n == 0) throw Error(Errc::kDecodeError, "empty proposal list");
  std::vector<Proposal> out;
  for (uint8_t i = 0; i < n; ++i) {
    Proposal p;
    const uint8_t aead = r.u8();
    const uint8_t prf_id = r.u8();
    const uint16_t kem_id = r.u16();
    if (aead != static_cast<uint8_t>(Aead::kAes256Gcm16) || prf_id != static_cast<uint8_t>(Prf::kHmacSha256)) {
      throw Error(Errc::kUnknownToken, "transform id in SA payload");
    }
    p.kem = static_cast<kem::KemParamSet>(kem_id);
    kem::param_profile(p.kem);  // rejects unknown ids
    out.push_back(p);
  }
  if (!r.empty()) throw Error(Errc::kDecodeError, "trailing SA bytes");
  return out;
}

struct IkeSaPayload {
  uint64_t spi;
  std::vector<Proposal> proposals;
};

IkeSaPayload decode_ike_sa(ByteView data) {
  ByteReader r(data);
  IkeSaPayload sa;
  sa.spi = r.u64();
  sa.proposals = read_suites(r);
  return sa;
}

struct EspSaPayload {
  uint32_t spi;
  std::vector<Proposal> proposals;
};

EspSaPayload decode_esp_sa(ByteView data) {
  ByteReader r(data);
  EspSaPayload sa;
  sa.spi = r.u32();
  sa.proposals = read_suites(r);
  return sa;
}

// ---- ENCRYPTED payload ----

Bytes header_aad(const IkeMessage& msg) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(msg.exchange));
  w.u8(static_cast<uint8_t>(msg.role));
  w.u32(msg.msg_id);
  return std::move(w).take();
}

Bytes gcm_nonce(ByteView salt, ByteView iv) { return concat(salt, iv); }

/// Key used for messages sent by `sender`.
ByteView direction_key(const KeyMaterial& km, Role sender) {
  return sender == Role::kInitiator ? ByteView(km.sk_ei) : ByteView(km.sk_er);
}

Payload seal_payloads(const KeyMaterial& km, Role sender, const IkeMessage& header,
                      const std::vector<Payload>& inner) {
  const ByteView sk = direction_key(km, sender);
  uint8_t iv[kIvBytes];
  store_be64(iv, header.msg_id);
  const Bytes sealed = crypto::aes256gcm_seal(sk.first(kAeadKeyBytes), gcm_nonce(sk.subspan(kAeadKeyBytes), iv),
                                              header_aad(header), encode_payloads(inner));
  Bytes body(iv, iv + kIvBytes);
  body.insert(body.end(), sealed.begin(), sealed.end());
  return {PayloadTag::kEncrypted, std::move(body)};
}

std::vector<Payload> open_payloads(const KeyMaterial& km, Role sender, const IkeMessage& msg) {
  const Bytes& body = msg.payload(PayloadTag::kEncrypted);
  if (body.size() < kIvBytes + crypto::kGcmTagBytes) throw Error(Errc::kAuthenticationFailed, "short ENCRYPTED");
  const ByteView sk = direction_key(km, sender);
  const ByteView iv = ByteView(body).first(kIvBytes);
  auto plain = crypto::aes256gcm_open(sk.first(kAeadKeyBytes), gcm_nonce(sk.subspan(kAeadKeyBytes), iv),
                                      header_aad(msg), ByteView(body).subspan(kIvBytes));
  if (!plain) throw Error(Errc::kAuthenticationFailed, "ENCRYPTED payload integrity check failed");
  return decode_payloads(*plain);
}

const Bytes& find(const std::vector<Payload>& payloads, PayloadTag tag, size_t nth = 0) {
  for (const Payload& p : payloads) {
    if (p.tag == tag && nth-- == 0) return p.data;
  }
  throw Error(Errc::kDecodeError, "missing payload tag " + std::to_string(static_cast<int>(tag)));
}

// ---- AUTH ----

Bytes auth_value(const IkeSaState& s, ByteView psk, Role signer) {
  if (!s.keys) throw Error(Errc::kUnexpectedMessage, "AUTH before keys exist");
  const KeyMaterial& km = *s.keys;
  const bool init = signer == Role::kInitiator;
  const ByteView own_msg = init ? s.init_request : s.init_response;
  const ByteView peer_nonce = init ? s.nr : s.ni;
  const ByteView sk_p = init ? km.sk_pi : km.sk_pr;
  const std::string& id = (signer == s.role) ? s.config.id : s.config.peer_id;
  const Bytes id_mac = prf(s.chosen->prf, sk_p, to_bytes(id));
  const Bytes pad_key = prf(s.chosen->prf, psk, to_bytes(kKeyPad));
  return prf(s.chosen->prf, pad_key, concat(own_msg, peer_nonce, id_mac));
}

// ---- transitions ----

Role peer_of(Role r) { return r == Role::kInitiator ? Role::kResponder : Role::kInitiator; }

void advance(IkeSaState& s, Phase next) {
  const auto order = [](Phase p) { return static_cast<int>(p); };
  if (order(next) != order(s.phase) + 1) {
    throw Error(Errc::kUnexpectedMessage,
                std::string("phase ") + std::string(phase_name(s.phase)) + " -> " + std::string(phase_name(next)));
  }
  s.phase = next;
  s.history.push_back(next);
}

uint64_t nonzero_u64(kem::SeedableRandomSource& rng) {
  uint64_t v = 0;
  while (v == 0) v = rng.next_u64();
  return v;
}

uint32_t nonzero_u32(kem::SeedableRandomSource& rng, uint32_t avoid = 0) {
  uint32_t v = 0;
  while (v == 0 || v == avoid) v = rng.next_u32();
  return v;
}

struct Ctx {
  IkeSaState& s;
  StepResult& out;

  void send(IkeMessage msg) {
    s.last_sent = fragment(msg, s.config.mtu);
    out.outbound.insert(out.outbound.end(), s.last_sent.begin(), s.last_sent.end());
  }
  void send_request(IkeMessage msg) {
    msg.role = MsgRole::kRequest;
    msg.msg_id = s.next_msg_id++;
    s.awaiting = msg.msg_id;
    s.retries = 0;
    out.arm_timer = msg.msg_id;
    send(std::move(msg));
  }
  void send_response(IkeMessage msg, uint32_t msg_id) {
    msg.role = MsgRole::kResponse;
    msg.msg_id = msg_id;
    s.last_response_id = msg_id;
    s.next_msg_id = msg_id + 1;
    send(std::move(msg));
  }
};

// Initiator

void start(Ctx& c) {
  IkeSaState& s = c.s;
  if (s.role != Role::kInitiator) throw Error(Errc::kUnexpectedMessage, "responder cannot start");
  if (s.phase != Phase::kIdle) throw Error(Errc::kUnexpectedMessage, "start outside IDLE");
  if (s.config.proposals.empty()) throw Error(Errc::kNegotiationFailed, "no IKE proposals configured");
  s.spi_i = nonzero_u64(s.rng);
  s.ni = s.rng.bytes(kNonceBytes);
  s.kem_pair = kem::kem_keygen(s.config.proposals.front().kem, s.rng);

  IkeMessage req;
  req.exchange = Exchange::kSaInit;
  req.payloads = {{PayloadTag::kSa, encode_ike_sa(s.spi_i, s.config.proposals)},
                  {PayloadTag::kKe, s.kem_pair->ek},
                  {PayloadTag::kNonce, s.ni}};
  req.msg_id = s.next_msg_id;
  s.init_request = encode(req);
  c.send_request(std::move(req));
  advance(s, Phase::kInitSent);
}

void on_init_response(Ctx& c, const IkeMessage& msg) {
  IkeSaState& s = c.s;
  const IkeSaPayload sa = decode_ike_sa(msg.payload(PayloadTag::kSa));
  if (sa.proposals.size() != 1 ||
      std::find(s.config.proposals.begin(), s.config.proposals.end(), sa.proposals[0]) == s.config.proposals.end()) {
    throw Error(Errc::kNegotiationFailed, "responder chose a proposal that was not offered");
  }
  if (sa.proposals[0].kem != s.kem_pair->params) {
    throw Error(Errc::kNegotiationFailed, "responder chose a different key exchange than the KE payload");
  }
  s.chosen = sa.proposals[0];
  s.spi_r = sa.spi;
  s.nr = msg.payload(PayloadTag::kNonce);
  if (s.nr.size() != kNonceBytes) throw Error(Errc::kDecodeError, "nonce length");
  const kem::SharedSecret ss = kem::kem_decaps(s.chosen->kem, s.kem_pair->dk, msg.payload(PayloadTag::kKe));
  s.keys = derive_keys(*s.chosen, ss, s.ni, s.nr, s.spi_i, s.spi_r);
  s.init_response = encode(msg);
  advance(s, Phase::kInitDone);

  IkeMessage req;
  req.exchange = Exchange::kAuth;
  req.msg_id = s.next_msg_id;
  req.role = MsgRole::kRequest;
  req.payloads = {seal_payloads(*s.keys, s.role, req, {{PayloadTag::kAuth, authenticate(s, s.config.psk)}})};
  c.send_request(std::move(req));
}

void on_auth_response(Ctx& c, const IkeMessage& msg) {
  IkeSaState& s = c.s;
  const auto inner = open_payloads(*s.keys, Role::kResponder, msg);
  verify_peer_auth(s, s.config.psk, find(inner, PayloadTag::kAuth));
  advance(s, Phase::kAuthDone);

  s.child_spi_i = nonzero_u32(s.rng);
  s.child_ni = s.rng.bytes(kNonceBytes);
  IkeMessage req;
  req.exchange = Exchange::kCreateChild;
  req.msg_id = s.next_msg_id;
  req.role = MsgRole::kRequest;
  req.payloads = {seal_payloads(*s.keys, s.role, req,
                                {{PayloadTag::kSa, encode_esp_sa(s.child_spi_i, s.config.esp_proposals)},
                                 {PayloadTag::kNonce, s.child_ni},
                                 {PayloadTag::kTs, encode_subnets(s.config.selectors.local)},
                                 {PayloadTag::kTs, encode_subnets(s.config.selectors.remote)}})};
  c.send_request(std::move(req));
}

void on_child_response(Ctx& c, const IkeMessage& msg) {
  IkeSaState& s = c.s;
  const auto inner = open_payloads(*s.keys, Role::kResponder, msg);
  const EspSaPayload sa = decode_esp_sa(find(inner, PayloadTag::kSa));
  if (sa.proposals.size() != 1 || std::find(s.config.esp_proposals.begin(), s.config.esp_proposals.end(),
                                            sa.proposals[0]) == s.config.esp_proposals.end()) {
    throw Error(Errc::kNegotiationFailed, "responder chose an ESP proposal that was not offered");
  }
  if (sa.spi == 0 || sa.spi == s.child_spi_i) throw Error(Errc::kNegotiationFailed, "ESP SPI collision");
  s.child_chosen = sa.proposals[0];
  s.child_spi_r = sa.spi;
  s.child_nr = find(inner, PayloadTag::kNonce);
  if (s.child_nr.size() != kNonceBytes) throw Error(Errc::kDecodeError, "nonce length");
  s.child_keys = derive_child_keys(s.chosen->prf, s.keys->sk_d, s.child_ni, s.child_nr, s.child_spi_i,
                                   s.child_spi_r, true);
  s.awaiting.reset();
  advance(s, Phase::kChildEstablished);
  c.out.child_keys = s.child_keys;
}

// Responder

void on_init_request(Ctx& c, const IkeMessage& msg) {
  IkeSaState& s = c.s;
  const IkeSaPayload sa = decode_ike_sa(msg.payload(PayloadTag::kSa));
  // initiator preference wins
  const Proposal chosen = negotiate(sa.proposals, s.config.proposals);
  if (chosen.kem != sa.proposals.front().kem) {
    throw Error(Errc::kNegotiationFailed, "KE payload group " + std::string(kem_token(sa.proposals.front().kem)) +
                                              " not acceptable");
  }
  const Bytes& ek = msg.payload(PayloadTag::kKe);
  s.ni = msg.payload(PayloadTag::kNonce);
  if (s.ni.size() != kNonceBytes) throw Error(Errc::kDecodeError, "nonce length");
  s.chosen = chosen;
  s.spi_i = sa.spi;
  s.spi_r = nonzero_u64(s.rng);
  s.nr = s.rng.bytes(kNonceBytes);
  const kem::EncapsResult enc = kem::kem_encaps(chosen.kem, ek, s.rng);
  s.keys = derive_keys(chosen, enc.ss, s.ni, s.nr, s.spi_i, s.spi_r);
  s.init_request = encode(msg);

  IkeMessage resp;
  resp.exchange = Exchange::kSaInit;
  resp.role = MsgRole::kResponse;
  resp.msg_id = msg.msg_id;
  resp.payloads = {{PayloadTag::kSa, encode_ike_sa(s.spi_r, {chosen})},
                   {PayloadTag::kKe, enc.ct},
                   {PayloadTag::kNonce, s.nr}};
  s.init_response = encode(resp);
  c.send_response(std::move(resp), msg.msg_id);
  advance(s, Phase::kInitSent);
  advance(s, Phase::kInitDone);
}

void on_auth_request(Ctx& c, const IkeMessage& msg) {
  IkeSaState& s = c.s;
  const auto inner = open_payloads(*s.keys, Role::kInitiator, msg);
  verify_peer_auth(s, s.config.psk, find(inner, PayloadTag::kAuth));
  IkeMessage resp;
  resp.exchange = Exchange::kAuth;
  resp.role = MsgRole::kResponse;
  resp.msg_id = msg.msg_id;
  resp.payloads = {seal_payloads(*s.keys, s.role, resp, {{PayloadTag::kAuth, authenticate(s, s.config.psk)}})};
  c.send_response(std::move(resp), msg.msg_id);
  advance(s, Phase::kAuthDone);
}

void on_child_request(Ctx& c, const IkeMessage& msg) {
  IkeSaState& s = c.s;
  const auto inner = open_payloads(*s.keys, Role::kInitiator, msg);
  const EspSaPayload sa = decode_esp_sa(find(inner, PayloadTag::kSa));
  const Proposal chosen = negotiate(sa.proposals, s.config.esp_proposals);
  const auto ts_i = decode_subnets(find(inner, PayloadTag::kTs, 0));
  const auto ts_r = decode_subnets(find(inner, PayloadTag::kTs, 1));
  if (!covered_by(ts_i, s.config.selectors.remote) || !covered_by(ts_r, s.config.selectors.local)) {
    throw Error(Errc::kNegotiationFailed, "traffic selectors unacceptable");
  }
  s.child_nr = s.rng.bytes(kNonceBytes);
  s.child_ni = find(inner, PayloadTag::kNonce);
  if (s.child_ni.size() != kNonceBytes) throw Error(Errc::kDecodeError, "nonce length");
  s.child_chosen = chosen;
  s.child_spi_i = sa.spi;
  s.child_spi_r = nonzero_u32(s.rng, sa.spi);
  s.child_keys = derive_child_keys(s.chosen->prf, s.keys->sk_d, s.child_ni, s.child_nr, s.child_spi_i,
                                   s.child_spi_r, false);

  IkeMessage resp;
  resp.exchange = Exchange::kCreateChild;
  resp.role = MsgRole::kResponse;
  resp.msg_id = msg.msg_id;
  resp.payloads = {seal_payloads(*s.keys, s.role, resp,
                                 {{PayloadTag::kSa, encode_esp_sa(s.child_spi_r, {chosen})},
                                  {PayloadTag::kNonce, s.child_nr},
                                  {PayloadTag::kTs, encode_subnets(ts_i)},
                                  {PayloadTag::kTs, encode_subnets(ts_r)}})};
  c.send_response(std::move(resp), msg.msg_id);
  advance(s, Phase::kChildEstablished);
  c.out.child_keys = s.child_keys;
}

Exchange expected_request(Phase p) {
  switch (p) {
    case Phase::kIdle: return Exchange::kSaInit;
    case Phase::kInitDone: return Exchange::kAuth;
    case Phase::kAuthDone: return Exchange::kCreateChild;
    default: break;
  }
  throw Error(Errc::kUnexpectedMessage, "no request expected in phase " + std::string(phase_name(p)));
}

Exchange expected_response(Phase p) {
  switch (p) {
    case Phase::kInitSent: return Exchange::kSaInit;
    case Phase::kInitDone: return Exchange::kAuth;
    case Phase::kAuthDone: return Exchange::kCreateChild;
    default: break;
  }
  throw Error(Errc::kUnexpectedMessage, "no response expected in phase " + std::string(phase_name(p)));
}

std::string describe(const IkeMessage& m) {
  return std::string(exchange_name(m.exchange)) + " " + std::string(role_name(m.role)) + " #" +
         std::to_string(m.msg_id);
}

void inbound(Ctx& c, const IkeMessage& wire_msg) {
  IkeSaState& s = c.s;
  const bool terminal = s.phase == Phase::kChildEstablished || s.phase == Phase::kFailed;

  // A retransmitted request is answered from the cache, even after the
  // SA is up; fragments of it are simply answered once per fragment set.
  if (s.role == Role::kResponder && wire_msg.role == MsgRole::kRequest && s.last_response_id &&
      wire_msg.msg_id == *s.last_response_id) {
    if (!wire_msg.fragment_info || wire_msg.fragment_info->index == wire_msg.fragment_info->total) {
      c.out.outbound = s.last_sent;
    }
    return;
  }
  if (s.phase == Phase::kFailed) return;

  const auto whole = s.reassembler.add(wire_msg);
  if (!whole) return;
  const IkeMessage& msg = *whole;

  if (s.role == Role::kInitiator) {
    if (msg.role != MsgRole::kResponse) {
      if (terminal) return;
      throw Error(Errc::kUnexpectedMessage, describe(msg) + " sent to the initiator");
    }
    if (!s.awaiting || msg.msg_id != *s.awaiting) {
      if (msg.msg_id < s.next_msg_id) return;  // late duplicate
      throw Error(Errc::kUnexpectedMessage, describe(msg) + " does not answer an outstanding request");
    }
    if (msg.exchange != expected_response(s.phase)) {
      throw Error(Errc::kUnexpectedMessage, describe(msg) + " in phase " + std::string(phase_name(s.phase)));
    }
    switch (msg.exchange) {
      case Exchange::kSaInit: on_init_response(c, msg); break;
      case Exchange::kAuth: on_auth_response(c, msg); break;
      case Exchange::kCreateChild: on_child_response(c, msg); break;
    }
    return;
  }

  if (msg.role != MsgRole::kRequest) {
    if (terminal) return;
    throw Error(Errc::kUnexpectedMessage, describe(msg) + " sent to the responder");
  }
  if (terminal) return;
  if (msg.msg_id != s.next_msg_id || msg.exchange != expected_request(s.phase)) {
    throw Error(Errc::kUnexpectedMessage, describe(msg) + " in phase " + std::string(phase_name(s.phase)));
  }
  switch (msg.exchange) {
    case Exchange::kSaInit: on_init_request(c, msg); break;
    case Exchange::kAuth: on_auth_request(c, msg); break;
    case Exchange::kCreateChild: on_child_request(c, msg); break;
  }
}

void timeout(Ctx& c, uint32_t msg_id) {
  IkeSaState& s = c.s;
  if (s.phase == Phase::kFailed || !s.awaiting || *s.awaiting != msg_id) return;  // stale timer
  if (s.retries >= s.config.max_retries) {
    throw Error(Errc::kTimeout, "no response to request #" + std::to_string(msg_id) + " after " +
                                    std::to_string(s.retries) + " retransmissions");
  }
  ++s.retries;
  c.out.outbound = s.last_sent;
  c.out.arm_timer = msg_id;
}

}  // namespace

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kIdle: return "IDLE";
    case Phase::kInitSent: return "INIT_SENT";
    case Phase::kInitDone: return "INIT_DONE";
    case Phase::kAuthDone: return "AUTH_DONE";
    case Phase::kChildEstablished: return "CHILD_ESTABLISHED";
    case Phase::kFailed: return "FAILED";
  }
  return "?";
}

IkeSaState::IkeSaState(IkeConfig cfg, const kem::Seed& seed)
    : config(std::move(cfg)), rng(seed), role(config.role) {}

StepResult step(IkeSaState state, const IkeEvent& event) {
  StepResult out{std::move(state), {}, std::nullopt, std::nullopt};
  Ctx c{out.state, out};
  try {
    if (std::holds_alternative<StartEvent>(event)) {
      start(c);
    } else if (const auto* in = std::get_if<InboundEvent>(&event)) {
      inbound(c, in->msg);
    } else {
      timeout(c, std::get<TimeoutEvent>(event).msg_id);
    }
  } catch (const Error& e) {
    IkeSaState& s = out.state;
    s.phase = Phase::kFailed;
    s.history.push_back(Phase::kFailed);
    s.failure = IkeFailure{e.code(), e.what()};
    s.awaiting.reset();
    out.outbound.clear();
    out.child_keys.reset();
    out.arm_timer.reset();
  }
  return out;
}

Bytes authenticate(const IkeSaState& state, ByteView psk) {
  if (state.phase < Phase::kInitDone || state.phase == Phase::kFailed) {
    throw Error(Errc::kUnexpectedMessage, "authenticate requires INIT_DONE");
  }
  return auth_value(state, psk, state.role);
}

void verify_peer_auth(const IkeSaState& state, ByteView psk, ByteView auth) {
  const Bytes expect = auth_value(state, psk, peer_of(state.role));
  if (!constant_time_equal(expect, auth)) throw Error(Errc::kAuthenticationFailed, "peer AUTH mismatch");
}

Bytes encode_ike_sa(uint64_t spi, const std::vector<Proposal>& proposals) {
  ByteWriter w;
  w.u64(spi);
  write_suites(w, proposals);
  return std::move(w).take();
}

Bytes encode_esp_sa(uint32_t spi, const std::vector<Proposal>& proposals) {
  ByteWriter w;
  w.u32(spi);
  write_suites(w, proposals);
  return std::move(w).take();
}

}  // namespace pqe2::ike
