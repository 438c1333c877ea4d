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

// IKE phase timings read back from a capture, the way they are read from a
// tcpdump trace: each phase runs from the initiator's first SEND of the
// request (first fragment) to its RECV of the last response fragment.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqe2/ike/message.hpp"
#include "pqe2/netlab/capture.hpp"

namespace pqe2::bench {

inline constexpr std::string_view kPhaseNames[] = {"ike_init", "ike_auth", "child_sa"};

struct PhaseBreakdown {
  int64_t ike_init_ns = 0;
  int64_t ike_auth_ns = 0;
  int64_t child_sa_ns = 0;

  int64_t sum_ns() const { return ike_init_ns + ike_auth_ns + child_sa_ns; }
  int64_t get_ns(std::string_view phase) const;
  friend bool operator==(const PhaseBreakdown&, const PhaseBreakdown&) = default;
};

/// Parsed form of an IKE capture label ("IKE_AUTH response frag 2/3").
struct IkeLabel {
  ike::Exchange exchange;
  ike::MsgRole role;
  uint8_t index = 0;  // 0 when unfragmented
  uint8_t total = 0;
};

std::optional<IkeLabel> parse_ike_label(std::string_view detail);

/// Throws kIncompleteHandshake when any request SEND or complete response
/// RECV is missing at the initiator.
PhaseBreakdown extract_phases(const std::vector<netlab::CaptureEvent>& capture);

/// Endpoint that sent the IKE_SA_INIT request, if any.
std::optional<std::string> initiator_of(const std::vector<netlab::CaptureEvent>& capture);

/// Size of the initiator's first IKE_SA_INIT request as one unfragmented
/// message, recovered from the captured fragment sizes.
size_t sa_init_request_bytes(const std::vector<netlab::CaptureEvent>& capture);

}  // namespace pqe2::bench
