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

#include "pqe2/bench/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <iomanip>
#include <sstream>

#include "pqe2/common/error.hpp"

namespace pqe2::bench {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

uint64_t parse_count(std::string_view v, uint64_t max) {
  uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || out > max) {
    throw Error(Errc::kConfigError, "expected an integer up to " + std::to_string(max) + ", got '" +
                                        std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) {
    throw Error(Errc::kConfigError, "expected a number, got '" + s + "'");
  }
  return d;
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::stringstream ss{std::string(v)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = void (*)(ScenarioConfig&, const std::string&);

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s{
      {"scenario",
       {
           {"name", [](ScenarioConfig& c, const std::string& v) { c.name = v; }},
           {"security",
            [](ScenarioConfig& c, const std::string& v) {
              if (v == "none") {
                c.security = Security::kNone;
              } else if (v == "ipsec") {
                c.security = Security::kIpsec;
              } else {
                throw Error(Errc::kConfigError, "security must be none or ipsec");
              }
            }},
           {"iterations",
            [](ScenarioConfig& c, const std::string& v) { c.iterations = parse_count(v, 1'000'000); }},
           {"seed", [](ScenarioConfig& c, const std::string& v) { c.seed = kem::parse_seed(v); }},
       }},
      {"link",
       {
           {"latency", [](ScenarioConfig& c, const std::string& v) { c.link.latency = parse_duration(v); }},
           {"jitter", [](ScenarioConfig& c, const std::string& v) { c.link.jitter = parse_duration(v); }},
           {"mtu", [](ScenarioConfig& c, const std::string& v) { c.link.mtu = parse_count(v, 65535); }},
           {"loss_rate", [](ScenarioConfig& c, const std::string& v) { c.link.loss_rate = parse_real(v); }},
       }},
      {"ike",
       {
           {"proposal", [](ScenarioConfig& c, const std::string& v) { c.proposal = ike::parse_proposal_list(v); }},
           {"esp_proposal",
            [](ScenarioConfig& c, const std::string& v) { c.esp_proposal = ike::parse_proposal_list(v); }},
           {"start_action",
            [](ScenarioConfig& c, const std::string& v) { c.start_action = esp::parse_start_action(v); }},
           {"psk", [](ScenarioConfig& c, const std::string& v) { c.psk = v; }},
       }},
      {"traffic",
       {
           {"pingpong_messages",
            [](ScenarioConfig& c, const std::string& v) { c.traffic.pingpong_messages = parse_count(v, 1'000'000); }},
           {"payload", [](ScenarioConfig& c, const std::string& v) { c.traffic.payload = parse_count(v, 60'000); }},
       }},
      {"e2",
       {
           {"period",
            [](ScenarioConfig& c, const std::string& v) {
              c.e2.period = std::chrono::duration_cast<std::chrono::milliseconds>(parse_duration(v));
            }},
           {"metrics", [](ScenarioConfig& c, const std::string& v) { c.e2.metrics = split_list(v); }},
           {"ports",
            [](ScenarioConfig& c, const std::string& v) {
              const auto ports = split_list(v);
              if (ports.size() != 2) throw Error(Errc::kConfigError, "ports takes two values: e2, e42");
              c.e2.e2_port = static_cast<uint16_t>(parse_count(ports[0], 65535));
              c.e2.e42_port = static_cast<uint16_t>(parse_count(ports[1], 65535));
            }},
           {"duration",
            [](ScenarioConfig& c, const std::string& v) {
              c.e2.duration = std::chrono::duration_cast<std::chrono::milliseconds>(parse_duration(v));
            }},
       }},
  };
  return s;
}

void check(const ScenarioConfig& c) {
  if (c.name.empty() || c.name.find_first_of(",/\\ \t\"") != std::string::npos) {
    throw Error(Errc::kConfigError, "name must be non-empty without spaces, commas, quotes or slashes");
  }
  if (c.iterations < 1) throw Error(Errc::kConfigError, "iterations must be at least 1");
  try {
    netlab::validate(c.link);
  } catch (const Error& e) {
    throw Error(Errc::kConfigError, std::string("[link] ") + e.what());
  }
  if (c.security == Security::kIpsec && (c.proposal.empty() || c.esp_proposal.empty())) {
    throw Error(Errc::kConfigError, "security = ipsec needs [ike] proposal and esp_proposal");
  }
  if (c.e2.period.count() <= 0) throw Error(Errc::kConfigError, "[e2] period must be positive");
  if (c.e2.metrics.empty()) throw Error(Errc::kConfigError, "[e2] metrics must not be empty");
  if (c.traffic.payload + 10 + 24 + netlab::kDatagramOverhead > c.link.mtu) {
    throw Error(Errc::kConfigError, "[traffic] payload does not fit the link mtu once tunneled");
  }
}

}  // namespace

std::string_view security_name(Security s) { return s == Security::kNone ? "none" : "ipsec"; }

std::chrono::nanoseconds parse_duration(std::string_view text) {
  const std::string t = trim(text);
  size_t split = t.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(t[split - 1]))) --split;
  const std::string unit = t.substr(split);
  double scale = 0;
  if (unit.empty() || unit == "us") {
    scale = 1e3;
  } else if (unit == "ns") {
    scale = 1;
  } else if (unit == "ms") {
    scale = 1e6;
  } else if (unit == "s") {
    scale = 1e9;
  } else {
    throw Error(Errc::kConfigError, "unknown duration unit '" + unit + "'");
  }
  const double v = parse_real(trim(t.substr(0, split)));
  if (v < 0 || !std::isfinite(v * scale)) throw Error(Errc::kConfigError, "duration out of range: " + t);
  return std::chrono::nanoseconds(std::llround(v * scale));
}

std::string render_duration(std::chrono::nanoseconds d) {
  const int64_t ns = d.count();
  if (ns != 0 && ns % 1'000'000'000 == 0) return std::to_string(ns / 1'000'000'000) + "s";
  if (ns != 0 && ns % 1'000'000 == 0) return std::to_string(ns / 1'000'000) + "ms";
  if (ns % 1'000 == 0) return std::to_string(ns / 1'000) + "us";
  return std::to_string(ns) + "ns";
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string section;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto cut = raw.find_first_of("#;");
    const std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(Errc::kConfigError, where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) throw Error(Errc::kConfigError, where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::kConfigError, where + "expected key = value");
    if (section.empty()) throw Error(Errc::kConfigError, where + "key outside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = schema().at(section);
    auto it = keys.find(key);
    if (it == keys.end()) throw Error(Errc::kConfigError, where + "unknown key '" + key + "' in [" + section + "]");
    try {
      it->second(cfg, value);
    } catch (const Error& e) {
      throw Error(Errc::kConfigError, where + key + ": " + e.what());
    }
  }
  check(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kConfigError, "cannot read config " + path.string());
  try {
    return parse_config(in);
  } catch (const Error& e) {
    throw Error(Errc::kConfigError, path.string() + ": " + e.what());
  }
}

std::string render_config(const ScenarioConfig& c) {
  std::ostringstream o;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
  };
  o << "[scenario]\nname = " << c.name << "\nsecurity = " << security_name(c.security)
    << "\niterations = " << c.iterations << "\nseed = " << to_hex(c.seed) << "\n\n";
  o << "[link]\nlatency = " << render_duration(c.link.latency) << "\njitter = " << render_duration(c.link.jitter)
    << "\nmtu = " << c.link.mtu << "\nloss_rate = " << std::setprecision(17) << c.link.loss_rate << "\n\n";
  o << "[ike]\n";
  if (!c.proposal.empty()) o << "proposal = " << ike::render_proposal_list(c.proposal) << "\n";
  if (!c.esp_proposal.empty()) o << "esp_proposal = " << ike::render_proposal_list(c.esp_proposal) << "\n";
  o << "start_action = " << esp::start_action_name(c.start_action) << "\npsk = " << c.psk << "\n\n";
  o << "[traffic]\npingpong_messages = " << c.traffic.pingpong_messages << "\npayload = " << c.traffic.payload
    << "\n\n";
  o << "[e2]\nperiod = " << render_duration(c.e2.period) << "\nmetrics = " << join(c.e2.metrics)
    << "\nports = " << c.e2.e2_port << ", " << c.e2.e42_port << "\nduration = " << render_duration(c.e2.duration)
    << "\n";
  return o.str();
}

}  // namespace pqe2::bench
