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

// Report artifacts: per-iteration CSV files, a JSON summary per scenario
// and the comparison table built from summaries.
//
//   <name>_phases.csv    scenario,iteration,phase,duration_us
//   <name>_pingpong.csv  scenario,iteration,sample,one_way_us
//   <name>_xapp.csv      scenario,iteration,delay_us
//   <name>.json          summary (see write_summary_json)

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqe2/bench/scenario.hpp"

namespace pqe2::bench {

struct ScenarioSummary {
  ScenarioConfig config;
  size_t iterations = 0;
  std::map<std::string, LatencyStats> phases;  // empty without IPsec
  std::optional<LatencyStats> handshake_total;
  std::optional<LatencyStats> pingpong;
  size_t pingpong_timeouts = 0;
  std::optional<LatencyStats> xapp_delay;
  std::optional<size_t> sa_init_request_bytes;
  WireOverhead overhead;
};

ScenarioSummary summarize_report(const ScenarioReport& report);

struct ComparisonRow {
  std::string scenario;
  std::string metric;  // ike_init, ike_auth, child_sa, pingpong, xapp_delay
  double mean_us = 0;
  int64_t median_us = 0;
  double delta_mean_us = 0;  // against the baseline row of the same metric
  int64_t delta_median_us = 0;
  double ratio_median = 0;
};

struct ComparisonTable {
  std::string baseline;
  std::vector<ComparisonRow> rows;
};

/// Deltas of every metric both sides have, against the report named
/// `baseline` (the first one when empty). Throws kConfigMismatch for fewer
/// than two reports, an unknown baseline, or differing link/traffic
/// settings.
ComparisonTable compare(const std::vector<ScenarioSummary>& reports, const std::string& baseline = "");

/// Fixed-width text table followed by the reference figures of the
/// original VM testbed.
std::string render_comparison(const ComparisonTable& table);

inline constexpr std::string_view kReferenceFooter =
    "reference (strongSwan on two VMs): ike_init +3 ms for ML-KEM-768 and +4.7 ms for ML-KEM-1024 over "
    "X25519; ping-pong 125 us plain, 290 us over an AES-256-GCM tunnel";

// All writers throw kIoError when the file cannot be written; identical
// input gives byte-identical files.
void write_phase_csv(const ScenarioReport& report, const std::filesystem::path& path);
void write_pingpong_csv(const ScenarioReport& report, const std::filesystem::path& path);
void write_xapp_csv(const ScenarioReport& report, const std::filesystem::path& path);
void write_summary_json(const ScenarioSummary& summary, const std::filesystem::path& path);
void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path);

std::string summary_json(const ScenarioSummary& summary);
/// Inverse of summary_json. Throws kIoError / kConfigError.
ScenarioSummary read_summary_json(const std::filesystem::path& path);
ScenarioSummary parse_summary_json(std::string_view text);

struct PhaseRow {
  std::string scenario;
  size_t iteration = 0;
  std::string phase;
  int64_t duration_us = 0;
};

/// Reads a `_phases.csv` file back. Throws kIoError.
std::vector<PhaseRow> read_phase_csv(const std::filesystem::path& path);

}  // namespace pqe2::bench
