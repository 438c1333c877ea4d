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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pqe2 {

/// Failure categories shared by every module. Each maps onto one named
/// error of the component contracts so callers can branch on `code()`.
enum class Errc {
  // kem
  kUnsupportedParamSet,
  kMalformedKey,
  kMalformedInput,
  // ike
  kUnknownToken,
  kMalformedString,
  kNoProposalChosen,
  kUnexpectedMessage,
  kAuthenticationFailed,
  kNegotiationFailed,
  kLengthOverflow,
  kMtuTooSmall,
  kReassemblyIncomplete,
  kDecodeError,
  kTimeout,
  // esp
  kSequenceExhausted,
  kAuthFailed,
  kReplayDetected,
  kUnknownSpi,
  kQueueOverflow,
  // e2
  kConnectTimeout,
  kSetupRejected,
  kSubscriptionRejected,
  // netlab
  kInvalidSpec,
  kMtuExceeded,
  kNoRoute,
  // bench
  kIncompleteHandshake,
  kEmptySamples,
  kConfigMismatch,
  kConfigError,
  kIoError,
  kProtocolFailure,
  // crypto provider
  kCryptoBackend,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pqe2
