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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pqe2::netlab {

enum class Direction : uint8_t { kSend, kRecv };
enum class Proto : uint8_t { kPlain, kIke, kEsp, kE2 };

std::string_view direction_name(Direction d);
std::string_view proto_name(Proto p);
Direction parse_direction(std::string_view s);
Proto parse_proto(std::string_view s);

struct CaptureEvent {
  int64_t ts_ns = 0;
  std::string endpoint;
  Direction direction = Direction::kSend;
  Proto proto = Proto::kPlain;
  std::string detail;
  size_t size = 0;
  uint64_t corr_id = 0;

  friend bool operator==(const CaptureEvent&, const CaptureEvent&) = default;
};

/// Header row: ts_ns,endpoint,direction,proto,detail,size,corr_id
void write_capture_csv(std::ostream& out, const std::vector<CaptureEvent>& events);
std::vector<CaptureEvent> read_capture_csv(std::istream& in);

}  // namespace pqe2::netlab
