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

#include "pqe2/bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pqe2/common/error.hpp"

namespace pqe2::bench {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(Errc::kIoError, "write failed for " + path.string());
}

json stats_json(const LatencyStats& s) {
  return json{{"n", s.n},           {"mean_us", s.mean}, {"median_us", s.median},
              {"p95_us", s.p95},    {"min_us", s.min},   {"max_us", s.max}};
}

LatencyStats stats_from(const json& j) {
  LatencyStats s;
  s.n = j.at("n").get<size_t>();
  s.mean = j.at("mean_us").get<double>();
  s.median = j.at("median_us").get<int64_t>();
  s.p95 = j.at("p95_us").get<int64_t>();
  s.min = j.at("min_us").get<int64_t>();
  s.max = j.at("max_us").get<int64_t>();
  return s;
}

std::optional<LatencyStats> maybe_summary(const std::vector<int64_t>& us) {
  if (us.empty()) return std::nullopt;
  return summarize(us);
}

void add_row(ComparisonTable& t, const std::string& scenario, const std::string& metric, const LatencyStats& s,
             const LatencyStats& base) {
  ComparisonRow row;
  row.scenario = scenario;
  row.metric = metric;
  row.mean_us = s.mean;
  row.median_us = s.median;
  row.delta_mean_us = s.mean - base.mean;
  row.delta_median_us = s.median - base.median;
  row.ratio_median = base.median != 0 ? static_cast<double>(s.median) / static_cast<double>(base.median) : 0.0;
  t.rows.push_back(std::move(row));
}

std::string csv_field(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ',' || c == '\n') c = ';';
  }
  return out;
}

}  // namespace

ScenarioSummary summarize_report(const ScenarioReport& report) {
  ScenarioSummary s;
  s.config = report.config;
  s.iterations = report.iterations.size();
  s.overhead = report.overhead;
  std::vector<int64_t> total;
  std::vector<int64_t> delays;
  for (const auto& it : report.iterations) {
    if (it.handshake_total_ns) total.push_back(ns_to_us(*it.handshake_total_ns));
    if (it.xapp.first_packet_ts) delays.push_back(ns_to_us(xapp_delay(it.xapp)));
    if (it.sa_init_request_bytes && !s.sa_init_request_bytes) s.sa_init_request_bytes = it.sa_init_request_bytes;
    s.pingpong_timeouts += it.pingpong_timeouts;
  }
  const bool have_phases =
      !report.iterations.empty() &&
      std::all_of(report.iterations.begin(), report.iterations.end(), [](const auto& it) { return it.phases; });
  if (have_phases) {
    for (std::string_view phase : kPhaseNames) s.phases[std::string(phase)] = phase_stats(report, phase);
  }
  s.handshake_total = maybe_summary(total);
  s.xapp_delay = maybe_summary(delays);
  std::vector<int64_t> pp;
  for (const auto& it : report.iterations) {
    for (int64_t v : it.pingpong_ns) pp.push_back(ns_to_us(v));
  }
  s.pingpong = maybe_summary(pp);
  return s;
}

ComparisonTable compare(const std::vector<ScenarioSummary>& reports, const std::string& baseline) {
  if (reports.size() < 2) throw Error(Errc::kConfigMismatch, "compare needs at least two reports");
  const ScenarioSummary* base = &reports.front();
  if (!baseline.empty()) {
    base = nullptr;
    for (const auto& r : reports) {
      if (r.config.name == baseline) base = &r;
    }
    if (!base) throw Error(Errc::kConfigMismatch, "no report named '" + baseline + "'");
  }
  for (const auto& r : reports) {
    if (!(r.config.link == base->config.link)) {
      throw Error(Errc::kConfigMismatch, "link settings of '" + r.config.name + "' differ from the baseline");
    }
    if (!(r.config.traffic == base->config.traffic)) {
      throw Error(Errc::kConfigMismatch, "traffic settings of '" + r.config.name + "' differ from the baseline");
    }
  }

  ComparisonTable t;
  t.baseline = base->config.name;
  for (const auto& r : reports) {
    for (std::string_view phase : kPhaseNames) {
      const std::string key(phase);
      auto mine = r.phases.find(key);
      auto theirs = base->phases.find(key);
      if (mine != r.phases.end() && theirs != base->phases.end()) {
        add_row(t, r.config.name, key, mine->second, theirs->second);
      }
    }
    if (r.pingpong && base->pingpong) add_row(t, r.config.name, "pingpong", *r.pingpong, *base->pingpong);
    if (r.xapp_delay && base->xapp_delay) add_row(t, r.config.name, "xapp_delay", *r.xapp_delay, *base->xapp_delay);
  }
  return t;
}

std::string render_comparison(const ComparisonTable& table) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-11s %12s %10s %12s %10s %8s\n", "scenario", "metric", "mean_us",
                "median_us", "d_mean_us", "d_median", "ratio");
  out << line;
  for (const auto& r : table.rows) {
    std::snprintf(line, sizeof line, "%-24s %-11s %12.1f %10lld %+12.1f %+10lld %8.3f\n", r.scenario.c_str(),
                  r.metric.c_str(), r.mean_us, static_cast<long long>(r.median_us), r.delta_mean_us,
                  static_cast<long long>(r.delta_median_us), r.ratio_median);
    out << line;
  }
  out << "baseline: " << table.baseline << "\n" << kReferenceFooter << "\n";
  return out.str();
}

void write_phase_csv(const ScenarioReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "scenario,iteration,phase,duration_us\n";
  const std::string name = csv_field(report.config.name);
  for (const auto& it : report.iterations) {
    if (!it.phases) continue;
    for (std::string_view phase : kPhaseNames) {
      out << name << ',' << it.iteration << ',' << phase << ',' << ns_to_us(it.phases->get_ns(phase)) << '\n';
    }
  }
  finish(out, path);
}

void write_pingpong_csv(const ScenarioReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "scenario,iteration,sample,one_way_us\n";
  const std::string name = csv_field(report.config.name);
  for (const auto& it : report.iterations) {
    for (size_t k = 0; k < it.pingpong_ns.size(); ++k) {
      out << name << ',' << it.iteration << ',' << k << ',' << ns_to_us(it.pingpong_ns[k]) << '\n';
    }
  }
  finish(out, path);
}

void write_xapp_csv(const ScenarioReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "scenario,iteration,delay_us\n";
  const std::string name = csv_field(report.config.name);
  for (const auto& it : report.iterations) {
    if (it.xapp.first_packet_ts) out << name << ',' << it.iteration << ',' << ns_to_us(xapp_delay(it.xapp)) << '\n';
  }
  finish(out, path);
}

std::string summary_json(const ScenarioSummary& s) {
  json j;
  j["scenario"] = s.config.name;
  j["config"] = render_config(s.config);
  j["iterations"] = s.iterations;
  json phases = json::object();
  for (const auto& [name, stats] : s.phases) phases[name] = stats_json(stats);
  j["phases"] = phases;
  j["handshake_total"] = s.handshake_total ? stats_json(*s.handshake_total) : json(nullptr);
  j["pingpong"] = s.pingpong ? stats_json(*s.pingpong) : json(nullptr);
  j["pingpong_timeouts"] = s.pingpong_timeouts;
  j["xapp_delay"] = s.xapp_delay ? stats_json(*s.xapp_delay) : json(nullptr);
  j["sa_init_request_bytes"] = s.sa_init_request_bytes ? json(*s.sa_init_request_bytes) : json(nullptr);
  j["wire_overhead_bytes"] = {
      {"esp", s.overhead.esp}, {"inner_header", s.overhead.inner_header}, {"datagram", s.overhead.datagram}};
  return j.dump(2) + "\n";
}

ScenarioSummary parse_summary_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::kIoError, std::string("summary is not JSON: ") + e.what());
  }
  try {
    ScenarioSummary s;
    std::istringstream cfg(j.at("config").get<std::string>());
    s.config = parse_config(cfg);
    s.iterations = j.at("iterations").get<size_t>();
    for (const auto& [name, stats] : j.at("phases").items()) s.phases[name] = stats_from(stats);
    if (!j.at("handshake_total").is_null()) s.handshake_total = stats_from(j["handshake_total"]);
    if (!j.at("pingpong").is_null()) s.pingpong = stats_from(j["pingpong"]);
    s.pingpong_timeouts = j.at("pingpong_timeouts").get<size_t>();
    if (!j.at("xapp_delay").is_null()) s.xapp_delay = stats_from(j["xapp_delay"]);
    if (!j.at("sa_init_request_bytes").is_null()) s.sa_init_request_bytes = j["sa_init_request_bytes"].get<size_t>();
    const json& w = j.at("wire_overhead_bytes");
    s.overhead.esp = w.at("esp").get<size_t>();
    s.overhead.inner_header = w.at("inner_header").get<size_t>();
    s.overhead.datagram = w.at("datagram").get<size_t>();
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::kIoError, std::string("malformed summary: ") + e.what());
  }
}

void write_summary_json(const ScenarioSummary& summary, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << summary_json(summary);
  finish(out, path);
}

ScenarioSummary read_summary_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_summary_json(buf.str());
}

void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "baseline,scenario,metric,mean_us,median_us,delta_mean_us,delta_median_us,ratio_median\n";
  char num[64];
  for (const auto& r : table.rows) {
    out << csv_field(table.baseline) << ',' << csv_field(r.scenario) << ',' << r.metric << ',';
    std::snprintf(num, sizeof num, "%.3f", r.mean_us);
    out << num << ',' << r.median_us << ',';
    std::snprintf(num, sizeof num, "%.3f", r.delta_mean_us);
    out << num << ',' << r.delta_median_us << ',';
    std::snprintf(num, sizeof num, "%.4f", r.ratio_median);
    out << num << '\n';
  }
  finish(out, path);
}

std::vector<PhaseRow> read_phase_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::vector<PhaseRow> rows;
  std::string line;
  std::getline(in, line);
  if (line != "scenario,iteration,phase,duration_us") throw Error(Errc::kIoError, "unexpected phase CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    PhaseRow row;
    std::string iteration, duration;
    if (!std::getline(ls, row.scenario, ',') || !std::getline(ls, iteration, ',') ||
        !std::getline(ls, row.phase, ',') || !std::getline(ls, duration)) {
      throw Error(Errc::kIoError, "short phase CSV row: " + line);
    }
    try {
      row.iteration = std::stoull(iteration);
      row.duration_us = std::stoll(duration);
    } catch (const std::exception&) {
      throw Error(Errc::kIoError, "bad number in phase CSV row: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pqe2::bench
