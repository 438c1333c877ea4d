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

// Virtual LAN running in real time. Every endpoint is driven from one
// dispatcher loop: datagrams are delivered after the link delay, handlers
// and timers execute on the caller's thread inside run_*/recv, and the
// time they take is real time on the shared clock.

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "pqe2/common/bytes.hpp"
#include "pqe2/kem/drbg.hpp"
#include "pqe2/netlab/capture.hpp"

namespace pqe2::netlab {

using std::chrono::nanoseconds;

/// IPv4 + UDP header bytes charged against the MTU for every datagram.
inline constexpr size_t kDatagramOverhead = 28;
inline constexpr size_t kMinMtu = 576;

struct LinkSpec {
  nanoseconds latency{50'000};
  nanoseconds jitter{5'000};
  size_t mtu = 1400;
  double loss_rate = 0.0;

  friend bool operator==(const LinkSpec&, const LinkSpec&) = default;
};

/// Throws kInvalidSpec when an invariant does not hold.
void validate(const LinkSpec& spec);

struct LinkDecl {
  std::string a;
  std::string b;
  LinkSpec spec;
};

struct Topology {
  std::vector<std::string> endpoints;
  std::vector<LinkDecl> links;
  kem::Seed seed{};
};

/// Two endpoints joined by one duplex link.
Topology pair_topology(const std::string& a, const std::string& b, const LinkSpec& spec, const kem::Seed& seed);

/// IPv4 fragmentation fields; part of the charged datagram header.
struct IpFragment {
  uint32_t id = 0;
  uint16_t index = 0;
  uint16_t count = 1;
};

struct Datagram {
  std::string src;
  std::string dst;
  Proto proto = Proto::kPlain;
  std::string detail;
  Bytes payload;
  IpFragment frag;
  uint64_t corr_id = 0;
  int64_t sent_ns = 0;
  int64_t deliver_ns = 0;
};

class Lab {
 public:
  using Handler = std::function<void(const Datagram&)>;
  using TimerId = uint64_t;

  /// Throws kInvalidSpec for bad links, unknown or duplicate names, or a
  /// disconnected graph.
  explicit Lab(Topology topology);

  Lab(const Lab&) = delete;
  Lab& operator=(const Lab&) = delete;

  /// Nanoseconds since the lab was built. Shared by every endpoint.
  int64_t now_ns() const;

  bool has_endpoint(const std::string& name) const;
  const LinkSpec& link(const std::string& a, const std::string& b) const;

  /// Queues `payload` for delivery on the direct link from -> to and
  /// returns its correlation id. Throws kNoRoute or kMtuExceeded.
  uint64_t send(const std::string& from, const std::string& to, Proto proto, std::string detail, Bytes payload,
                IpFragment frag = {});

  /// Installs the delivery handler of an endpoint. Without a handler
  /// delivered datagrams wait in the endpoint's mailbox for recv().
  void on_receive(const std::string& endpoint, Handler handler);

  /// Runs the dispatcher until the mailbox of `endpoint` is non-empty or
  /// `timeout` elapses.
  std::optional<Datagram> recv(const std::string& endpoint, nanoseconds timeout);

  TimerId schedule_at(int64_t at_ns, std::function<void()> fn);
  TimerId schedule_after(nanoseconds delay, std::function<void()> fn);
  void cancel(TimerId id);

  /// Dispatches until `done` holds. Returns false on timeout or when no
  /// pending work could change the outcome.
  bool run_until(const std::function<bool()>& done, nanoseconds timeout);
  /// Dispatches everything due in the next `duration`.
  void run_for(nanoseconds duration);

  /// Observer called for every datagram handed to send(), lost or not.
  void set_tap(std::function<void(const Datagram&)> tap) { tap_ = std::move(tap); }

  /// Adds a caller-side record, e.g. an application start marker.
  void annotate(CaptureEvent event);

  /// All events sorted by timestamp (stable for equal timestamps).
  std::vector<CaptureEvent> capture_log() const;
  size_t pending() const { return queue_.size() - cancelled_.size(); }

 private:
  struct Entry {
    int64_t at_ns;
    uint64_t seq;
    TimerId id;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Entry& x, const Entry& y) const {
      return x.at_ns != y.at_ns ? x.at_ns > y.at_ns : x.seq > y.seq;
    }
  };
  struct Link {
    LinkSpec spec;
    int64_t last_delivery[2] = {0, 0};
  };

  void deliver(Datagram dg);
  void wait_until(int64_t at_ns) const;
  bool dispatch_one(int64_t deadline_ns);
  const Link& link_between(const std::string& a, const std::string& b, int& dir) const;
  Link& link_between(const std::string& a, const std::string& b, int& dir);

  std::chrono::steady_clock::time_point epoch_;
  std::set<std::string> endpoints_;
  std::map<std::pair<std::string, std::string>, Link> links_;
  kem::SeedableRandomSource rng_;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  std::set<TimerId> live_timers_;
  std::set<TimerId> cancelled_;
  std::map<std::string, Handler> handlers_;
  std::map<std::string, std::deque<Datagram>> mailboxes_;
  std::vector<CaptureEvent> events_;
  std::function<void(const Datagram&)> tap_;
  uint64_t next_seq_ = 0;
  uint64_t next_corr_ = 1;
};

}  // namespace pqe2::netlab
