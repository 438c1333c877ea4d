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

#include "pqe2/netlab/capture.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "pqe2/common/error.hpp"

namespace pqe2::netlab {

namespace {

constexpr std::string_view kHeader = "ts_ns,endpoint,direction,proto,detail,size,corr_id";

// Fields never contain quotes; commas are replaced so the file stays
// splittable by plain tools.
std::string field(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == ',' || c == '\n') c = ';';
  }
  return out;
}

}  // namespace

std::string_view direction_name(Direction d) { return d == Direction::kSend ? "SEND" : "RECV"; }

std::string_view proto_name(Proto p) {
  switch (p) {
    case Proto::kPlain: return "PLAIN";
    case Proto::kIke: return "IKE";
    case Proto::kEsp: return "ESP";
    case Proto::kE2: return "E2";
  }
  return "?";
}

Direction parse_direction(std::string_view s) {
  if (s == "SEND") return Direction::kSend;
  if (s == "RECV") return Direction::kRecv;
  throw Error(Errc::kDecodeError, "direction '" + std::string(s) + "'");
}

Proto parse_proto(std::string_view s) {
  for (Proto p : {Proto::kPlain, Proto::kIke, Proto::kEsp, Proto::kE2}) {
    if (proto_name(p) == s) return p;
  }
  throw Error(Errc::kDecodeError, "proto '" + std::string(s) + "'");
}

void write_capture_csv(std::ostream& out, const std::vector<CaptureEvent>& events) {
  out << kHeader << '\n';
  for (const CaptureEvent& e : events) {
    out << e.ts_ns << ',' << field(e.endpoint) << ',' << direction_name(e.direction) << ',' << proto_name(e.proto)
        << ',' << field(e.detail) << ',' << e.size << ',' << e.corr_id << '\n';
  }
}

std::vector<CaptureEvent> read_capture_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw Error(Errc::kDecodeError, "capture CSV header");
  std::vector<CaptureEvent> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (cols.size() != 7) throw Error(Errc::kDecodeError, "capture CSV row '" + line + "'");
    CaptureEvent e;
    try {
      e.ts_ns = std::stoll(cols[0]);
      e.size = std::stoull(cols[5]);
      e.corr_id = std::stoull(cols[6]);
    } catch (const std::exception&) {
      throw Error(Errc::kDecodeError, "capture CSV number in '" + line + "'");
    }
    e.endpoint = cols[1];
    e.direction = parse_direction(cols[2]);
    e.proto = parse_proto(cols[3]);
    e.detail = cols[4];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace pqe2::netlab
