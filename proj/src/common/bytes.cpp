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

#include "pqe2/common/bytes.hpp"

namespace pqe2 {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kUnsupportedParamSet: return "UnsupportedParamSet";
    case Errc::kMalformedKey: return "MalformedKey";
    case Errc::kMalformedInput: return "MalformedInput";
    case Errc::kUnknownToken: return "UnknownToken";
    case Errc::kMalformedString: return "MalformedString";
    case Errc::kNoProposalChosen: return "NoProposalChosen";
    case Errc::kUnexpectedMessage: return "UnexpectedMessage";
    case Errc::kAuthenticationFailed: return "AuthenticationFailed";
    case Errc::kNegotiationFailed: return "NegotiationFailed";
    case Errc::kLengthOverflow: return "LengthOverflow";
    case Errc::kMtuTooSmall: return "MtuTooSmall";
    case Errc::kReassemblyIncomplete: return "ReassemblyIncomplete";
    case Errc::kDecodeError: return "DecodeError";
    case Errc::kTimeout: return "Timeout";
    case Errc::kSequenceExhausted: return "SequenceExhausted";
    case Errc::kAuthFailed: return "AuthFailed";
    case Errc::kReplayDetected: return "ReplayDetected";
    case Errc::kUnknownSpi: return "UnknownSpi";
    case Errc::kQueueOverflow: return "QueueOverflow";
    case Errc::kConnectTimeout: return "ConnectTimeout";
    case Errc::kSetupRejected: return "SetupRejected";
    case Errc::kSubscriptionRejected: return "SubscriptionRejected";
    case Errc::kInvalidSpec: return "InvalidSpec";
    case Errc::kMtuExceeded: return "MtuExceeded";
    case Errc::kNoRoute: return "NoRoute";
    case Errc::kIncompleteHandshake: return "IncompleteHandshake";
    case Errc::kEmptySamples: return "EmptySamples";
    case Errc::kConfigMismatch: return "ConfigMismatch";
    case Errc::kConfigError: return "ConfigError";
    case Errc::kIoError: return "IoError";
    case Errc::kProtocolFailure: return "ProtocolFailure";
    case Errc::kCryptoBackend: return "CryptoBackend";
  }
  return "Unknown";
}

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::kDecodeError, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::kDecodeError, "invalid hex digit");
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

bool constant_time_equal(ByteView a, ByteView b) noexcept {
  if (a.size() != b.size()) return false;
  uint8_t diff = 0;
  for (size_t i = 0; i < a.size(); ++i) diff |= static_cast<uint8_t>(a[i] ^ b[i]);
  return diff == 0;
}

void ByteReader::need(size_t n) const {
  if (remaining() < n) throw Error(Errc::kDecodeError, "truncated input");
}

uint8_t ByteReader::u8() {
  need(1);
  return data_[pos_++];
}

uint16_t ByteReader::u16() {
  need(2);
  uint16_t v = static_cast<uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
  pos_ += 2;
  return v;
}

uint32_t ByteReader::u32() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_ + i];
  pos_ += 4;
  return v;
}

uint64_t ByteReader::u64() {
  uint64_t hi = u32();
  return (hi << 32) | u32();
}

ByteView ByteReader::bytes(size_t n) {
  need(n);
  ByteView v = data_.subspan(pos_, n);
  pos_ += n;
  return v;
}

ByteView ByteReader::rest() { return bytes(remaining()); }

}  // namespace pqe2
