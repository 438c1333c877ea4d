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

#include "pqe2/bench/phases.hpp"

#include <cstdio>
#include <map>

#include "pqe2/common/error.hpp"
#include "pqe2/ike/fragment.hpp"

namespace pqe2::bench {

namespace {

using netlab::CaptureEvent;
using netlab::Direction;
using netlab::Proto;

constexpr ike::Exchange kExchanges[] = {ike::Exchange::kSaInit, ike::Exchange::kAuth, ike::Exchange::kCreateChild};

bool is(const CaptureEvent& e, const std::string& endpoint, Direction dir, ike::Exchange ex, ike::MsgRole role,
        IkeLabel* label) {
  if (e.proto != Proto::kIke || e.endpoint != endpoint || e.direction != dir) return false;
  const auto l = parse_ike_label(e.detail);
  if (!l || l->exchange != ex || l->role != role) return false;
  *label = *l;
  return true;
}

// First complete fragment set of (ex, role) in `dir` at `endpoint`; returns
// the timestamp of its first and last event and the fragment sizes.
struct Span {
  int64_t first_ns;
  int64_t last_ns;
  std::vector<size_t> sizes;
};

std::optional<Span> first_complete(const std::vector<CaptureEvent>& capture, const std::string& endpoint,
                                   Direction dir, ike::Exchange ex, ike::MsgRole role) {
  std::optional<int64_t> first;
  std::map<uint8_t, size_t> pieces;
  for (const CaptureEvent& e : capture) {
    IkeLabel l{};
    if (!is(e, endpoint, dir, ex, role, &l)) continue;
    if (!first) first = e.ts_ns;
    if (l.total == 0) return Span{*first, e.ts_ns, {e.size}};
    pieces.emplace(l.index, e.size);
    if (pieces.size() == l.total) {
      Span s{*first, e.ts_ns, {}};
      for (const auto& [i, size] : pieces) s.sizes.push_back(size);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

int64_t PhaseBreakdown::get_ns(std::string_view phase) const {
  if (phase == "ike_init") return ike_init_ns;
  if (phase == "ike_auth") return ike_auth_ns;
  if (phase == "child_sa") return child_sa_ns;
  throw Error(Errc::kMalformedString, "unknown phase " + std::string(phase));
}

std::optional<IkeLabel> parse_ike_label(std::string_view detail) {
  const auto sp = detail.find(' ');
  if (sp == std::string_view::npos) return std::nullopt;
  const std::string_view ex = detail.substr(0, sp);
  std::string_view rest = detail.substr(sp + 1);
  IkeLabel out{};
  bool found = false;
  for (ike::Exchange e : kExchanges) {
    if (ike::exchange_name(e) == ex) {
      out.exchange = e;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  const auto sp2 = rest.find(' ');
  const std::string_view role = rest.substr(0, sp2);
  if (role == "request") {
    out.role = ike::MsgRole::kRequest;
  } else if (role == "response") {
    out.role = ike::MsgRole::kResponse;
  } else {
    return std::nullopt;
  }
  if (sp2 == std::string_view::npos) return out;
  rest = rest.substr(sp2 + 1);
  unsigned i = 0, n = 0;
  if (std::sscanf(std::string(rest).c_str(), "frag %u/%u", &i, &n) != 2 || i == 0 || i > n || n > 255) {
    return std::nullopt;
  }
  out.index = static_cast<uint8_t>(i);
  out.total = static_cast<uint8_t>(n);
  return out;
}

std::optional<std::string> initiator_of(const std::vector<CaptureEvent>& capture) {
  for (const CaptureEvent& e : capture) {
    if (e.proto != Proto::kIke || e.direction != Direction::kSend) continue;
    const auto l = parse_ike_label(e.detail);
    if (l && l->exchange == ike::Exchange::kSaInit && l->role == ike::MsgRole::kRequest) return e.endpoint;
  }
  return std::nullopt;
}

PhaseBreakdown extract_phases(const std::vector<CaptureEvent>& capture) {
  const auto init = initiator_of(capture);
  if (!init) throw Error(Errc::kIncompleteHandshake, "no IKE_SA_INIT request in capture");
  int64_t out[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    const ike::Exchange ex = kExchanges[i];
    const auto req = first_complete(capture, *init, Direction::kSend, ex, ike::MsgRole::kRequest);
    const auto resp = first_complete(capture, *init, Direction::kRecv, ex, ike::MsgRole::kResponse);
    if (!req || !resp) {
      throw Error(Errc::kIncompleteHandshake,
                  "missing " + std::string(ike::exchange_name(ex)) + (req ? " response" : " request"));
    }
    out[i] = resp->last_ns - req->first_ns;
    if (out[i] < 0) throw Error(Errc::kIncompleteHandshake, "response precedes request");
  }
  return PhaseBreakdown{out[0], out[1], out[2]};
}

size_t sa_init_request_bytes(const std::vector<CaptureEvent>& capture) {
  const auto init = initiator_of(capture);
  if (!init) throw Error(Errc::kIncompleteHandshake, "no IKE_SA_INIT request in capture");
  const auto req = first_complete(capture, *init, Direction::kSend, ike::Exchange::kSaInit, ike::MsgRole::kRequest);
  if (!req) throw Error(Errc::kIncompleteHandshake, "IKE_SA_INIT request fragments missing");
  return ike::unfragmented_size(req->sizes);
}

}  // namespace pqe2::bench
