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

#include "pqe2/netlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pqe2/common/error.hpp"

namespace pqe2::netlab {

namespace {

// Waits longer than this sleep first and spin for the remainder; the
// scheduler's wake-up error is well below it.
constexpr int64_t kSpinWindowNs = 150'000;

std::pair<std::string, std::string> key_of(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void validate(const LinkSpec& spec) {
  if (spec.latency.count() < 0) throw Error(Errc::kInvalidSpec, "negative latency");
  if (spec.jitter.count() < 0 || spec.jitter > spec.latency) {
    throw Error(Errc::kInvalidSpec, "jitter must lie in [0, latency]");
  }
  if (!(spec.loss_rate >= 0.0 && spec.loss_rate < 1.0)) throw Error(Errc::kInvalidSpec, "loss rate outside [0, 1)");
  if (spec.mtu < kMinMtu) throw Error(Errc::kInvalidSpec, "mtu below " + std::to_string(kMinMtu));
}

Topology pair_topology(const std::string& a, const std::string& b, const LinkSpec& spec, const kem::Seed& seed) {
  return Topology{{a, b}, {LinkDecl{a, b, spec}}, seed};
}

Lab::Lab(Topology topology) : epoch_(std::chrono::steady_clock::now()), rng_(topology.seed) {
  for (const std::string& name : topology.endpoints) {
    if (name.empty() || !endpoints_.insert(name).second) {
      throw Error(Errc::kInvalidSpec, "endpoint name '" + name + "' empty or repeated");
    }
  }
  if (endpoints_.empty()) throw Error(Errc::kInvalidSpec, "no endpoints");
  for (const LinkDecl& l : topology.links) {
    validate(l.spec);
    if (!endpoints_.count(l.a) || !endpoints_.count(l.b) || l.a == l.b) {
      throw Error(Errc::kInvalidSpec, "link " + l.a + " - " + l.b + " does not join two known endpoints");
    }
    if (!links_.emplace(key_of(l.a, l.b), Link{l.spec}).second) {
      throw Error(Errc::kInvalidSpec, "duplicate link " + l.a + " - " + l.b);
    }
  }

  std::set<std::string> seen{*endpoints_.begin()};
  std::vector<std::string> frontier{*endpoints_.begin()};
  while (!frontier.empty()) {
    const std::string at = frontier.back();
    frontier.pop_back();
    for (const auto& [key, link] : links_) {
      const std::string* other = key.first == at ? &key.second : key.second == at ? &key.first : nullptr;
      if (other && seen.insert(*other).second) frontier.push_back(*other);
    }
  }
  if (seen.size() != endpoints_.size()) throw Error(Errc::kInvalidSpec, "topology is not connected");
}

int64_t Lab::now_ns() const {
  return std::chrono::duration_cast<nanoseconds>(std::chrono::steady_clock::now() - epoch_).count();
}

bool Lab::has_endpoint(const std::string& name) const { return endpoints_.count(name) != 0; }

const Lab::Link& Lab::link_between(const std::string& a, const std::string& b, int& dir) const {
  auto it = links_.find(key_of(a, b));
  if (it == links_.end()) throw Error(Errc::kNoRoute, "no link " + a + " -> " + b);
  dir = a < b ? 0 : 1;
  return it->second;
}

Lab::Link& Lab::link_between(const std::string& a, const std::string& b, int& dir) {
  return const_cast<Link&>(std::as_const(*this).link_between(a, b, dir));
}

const LinkSpec& Lab::link(const std::string& a, const std::string& b) const {
  int dir = 0;
  return link_between(a, b, dir).spec;
}

uint64_t Lab::send(const std::string& from, const std::string& to, Proto proto, std::string detail, Bytes payload,
                   IpFragment frag) {
  int dir = 0;
  Link& l = link_between(from, to, dir);
  if (payload.size() + kDatagramOverhead > l.spec.mtu) {
    throw Error(Errc::kMtuExceeded, std::to_string(payload.size()) + " byte payload on a " +
                                        std::to_string(l.spec.mtu) + " byte mtu link");
  }

  const int64_t now = now_ns();
  const uint64_t corr = next_corr_++;
  events_.push_back({now, from, Direction::kSend, proto, detail, payload.size(), corr});

  const bool lost = l.spec.loss_rate > 0.0 && rng_.next_unit() < l.spec.loss_rate;
  int64_t delay = l.spec.latency.count();
  if (l.spec.jitter.count() > 0) {
    const double u = rng_.next_unit() * 2.0 - 1.0;
    delay += std::llround(u * static_cast<double>(l.spec.jitter.count()));
  }
  // the link never reorders
  const int64_t at = std::max(now + delay, l.last_delivery[dir]);
  if (!lost) l.last_delivery[dir] = at;

  Datagram dg{from, to, proto, std::move(detail), std::move(payload), frag, corr, now, at};
  if (tap_) tap_(dg);
  if (lost) return corr;
  queue_.push(Entry{at, next_seq_++, 0, [this, dg = std::move(dg)]() mutable { deliver(std::move(dg)); }});
  return corr;
}

void Lab::deliver(Datagram dg) {
  events_.push_back({dg.deliver_ns, dg.dst, Direction::kRecv, dg.proto, dg.detail, dg.payload.size(), dg.corr_id});
  auto it = handlers_.find(dg.dst);
  if (it != handlers_.end() && it->second) {
    // the handler may replace itself; keep a copy alive for the call
    Handler h = it->second;
    h(dg);
    return;
  }
  mailboxes_[dg.dst].push_back(std::move(dg));
}

void Lab::on_receive(const std::string& endpoint, Handler handler) {
  if (!has_endpoint(endpoint)) throw Error(Errc::kNoRoute, "unknown endpoint " + endpoint);
  handlers_[endpoint] = std::move(handler);
}

Lab::TimerId Lab::schedule_at(int64_t at_ns, std::function<void()> fn) {
  const TimerId id = next_seq_++ + 1;
  live_timers_.insert(id);
  queue_.push(Entry{at_ns, id - 1, id, std::move(fn)});
  return id;
}

Lab::TimerId Lab::schedule_after(nanoseconds delay, std::function<void()> fn) {
  return schedule_at(now_ns() + delay.count(), std::move(fn));
}

void Lab::cancel(TimerId id) {
  if (live_timers_.erase(id)) cancelled_.insert(id);
}

void Lab::wait_until(int64_t at_ns) const {
  int64_t left = at_ns - now_ns();
  if (left > kSpinWindowNs) {
    std::this_thread::sleep_for(nanoseconds(left - kSpinWindowNs));
  }
  while (now_ns() < at_ns) {
  }
}

bool Lab::dispatch_one(int64_t deadline_ns) {
  while (!queue_.empty() && queue_.top().id != 0 && cancelled_.count(queue_.top().id)) {
    cancelled_.erase(queue_.top().id);
    queue_.pop();
  }
  if (queue_.empty() || queue_.top().at_ns > deadline_ns) return false;
  Entry e = queue_.top();
  queue_.pop();
  if (e.id != 0) live_timers_.erase(e.id);
  wait_until(e.at_ns);
  e.fn();
  return true;
}

std::optional<Datagram> Lab::recv(const std::string& endpoint, nanoseconds timeout) {
  if (!has_endpoint(endpoint)) throw Error(Errc::kNoRoute, "unknown endpoint " + endpoint);
  auto& box = mailboxes_[endpoint];
  const int64_t deadline = now_ns() + timeout.count();
  while (box.empty()) {
    if (!dispatch_one(deadline)) return std::nullopt;
  }
  Datagram out = std::move(box.front());
  box.pop_front();
  return out;
}

bool Lab::run_until(const std::function<bool()>& done, nanoseconds timeout) {
  const int64_t deadline = now_ns() + timeout.count();
  while (!done()) {
    if (!dispatch_one(deadline)) return done();
  }
  return true;
}

void Lab::run_for(nanoseconds duration) {
  const int64_t deadline = now_ns() + duration.count();
  while (dispatch_one(deadline)) {
  }
  wait_until(deadline);
}

void Lab::annotate(CaptureEvent event) { events_.push_back(std::move(event)); }

std::vector<CaptureEvent> Lab::capture_log() const {
  std::vector<CaptureEvent> out = events_;
  std::stable_sort(out.begin(), out.end(),
                   [](const CaptureEvent& x, const CaptureEvent& y) { return x.ts_ns < y.ts_ns; });
  return out;
}

}  // namespace pqe2::netlab
