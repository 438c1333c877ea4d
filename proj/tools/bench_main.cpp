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

// bench: scenario runner, report comparison and conformance vectors.
//
//   bench run --config ecdh.conf [--iterations N] [--seed HEX] [--out DIR] [--format csv|json]
//   bench compare out/ecdh.json out/mlkem768.json --baseline ecdh
//   bench kat --suite mlkem|aead|prf|x25519|all
//
// Exit codes: 0 success, 1 I/O or conformance failure, 2 protocol
// failure, 3 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "pqe2/bench/kat_suite.hpp"
#include "pqe2/bench/report.hpp"
#include "pqe2/common/error.hpp"

namespace {

using namespace pqe2;
using namespace pqe2::bench;

constexpr int kExitFailure = 1;
constexpr int kExitProtocol = 2;
constexpr int kExitConfig = 3;

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::kConfigError:
    case Errc::kConfigMismatch:
    case Errc::kUnknownToken:
    case Errc::kMalformedString:
    case Errc::kInvalidSpec:
      return kExitConfig;
    case Errc::kIoError:
    case Errc::kEmptySamples:
      return kExitFailure;
    default:
      return kExitProtocol;
  }
}

void print_stats(const char* label, const LatencyStats& s) {
  std::printf("  %-16s n=%-6zu mean=%10.1f median=%8lld p95=%8lld min=%8lld max=%8lld us\n", label, s.n, s.mean,
              static_cast<long long>(s.median), static_cast<long long>(s.p95), static_cast<long long>(s.min),
              static_cast<long long>(s.max));
}

void print_summary(const ScenarioSummary& s) {
  std::printf("%s: %s, %zu iterations\n", s.config.name.c_str(), std::string(security_name(s.config.security)).c_str(),
              s.iterations);
  for (std::string_view phase : kPhaseNames) {
    auto it = s.phases.find(std::string(phase));
    if (it != s.phases.end()) print_stats(std::string(phase).c_str(), it->second);
  }
  if (s.handshake_total) print_stats("handshake_total", *s.handshake_total);
  if (s.pingpong) print_stats("pingpong", *s.pingpong);
  if (s.pingpong_timeouts) std::printf("  pingpong timeouts: %zu\n", s.pingpong_timeouts);
  if (s.xapp_delay) print_stats("xapp_delay", *s.xapp_delay);
  if (s.sa_init_request_bytes) std::printf("  IKE_SA_INIT request: %zu bytes\n", *s.sa_init_request_bytes);
  std::printf("  overhead: esp %zu, inner header %zu, datagram %zu bytes\n", s.overhead.esp,
              s.overhead.inner_header, s.overhead.datagram);
}

int cmd_run(const std::string& config_path, std::optional<size_t> iterations, const std::string& seed,
            const std::filesystem::path& out_dir, const std::string& format) {
  ScenarioConfig cfg = load_config(config_path);
  if (iterations) {
    if (*iterations == 0) throw Error(Errc::kConfigError, "--iterations must be at least 1");
    cfg.iterations = *iterations;
  }
  if (!seed.empty()) {
    try {
      cfg.seed = kem::parse_seed(seed);
    } catch (const Error& e) {
      throw Error(Errc::kConfigError, std::string("--seed: ") + e.what());
    }
  }
  const ScenarioReport report = run_scenario(cfg);
  const ScenarioSummary summary = summarize_report(report);
  print_summary(summary);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(Errc::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
    const std::string stem = cfg.name;
    if (format != "json") {
      write_phase_csv(report, out_dir / (stem + "_phases.csv"));
      write_pingpong_csv(report, out_dir / (stem + "_pingpong.csv"));
      write_xapp_csv(report, out_dir / (stem + "_xapp.csv"));
    }
    if (format != "csv") write_summary_json(summary, out_dir / (stem + ".json"));
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& paths, const std::string& baseline, const std::string& csv) {
  std::vector<ScenarioSummary> summaries;
  for (const auto& p : paths) summaries.push_back(read_summary_json(p));
  const ComparisonTable table = compare(summaries, baseline);
  std::cout << render_comparison(table);
  if (!csv.empty()) write_comparison_csv(table, csv);
  return 0;
}

int cmd_kat(const std::string& suite, const std::filesystem::path& dir) {
  std::vector<std::string_view> suites;
  if (suite == "all") {
    suites.assign(std::begin(kKatSuites), std::end(kKatSuites));
  } else {
    suites.push_back(suite);
  }
  bool ok = true;
  for (std::string_view s : suites) {
    for (const KatFileResult& r : run_kat_suite(s, dir)) {
      const bool pass = r.outcome.ok();
      ok = ok && pass;
      std::printf("%-6s %-28s %5zu passed %3zu failed  %s\n", r.suite.c_str(), r.file.c_str(), r.outcome.passed,
                  r.outcome.failed, pass ? "OK" : "FAIL");
      for (const auto& f : r.outcome.failures) std::printf("         %s\n", f.c_str());
    }
  }
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"post-quantum IPsec / E2 benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, seed, format = "all";
  std::filesystem::path out_dir;
  std::optional<size_t> iterations;
  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--iterations", iterations, "override the iteration count");
  run->add_option("--seed", seed, "override the seed (64 hex digits)");
  run->add_option("--out", out_dir, "directory for CSV / JSON reports");
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json", "all"}));

  std::vector<std::string> reports;
  std::string baseline, compare_csv;
  auto* cmp = app.add_subcommand("compare", "compare JSON summaries against a baseline");
  cmp->add_option("reports", reports, "summary files")->required()->check(CLI::ExistingFile);
  cmp->add_option("--baseline", baseline, "baseline scenario name (default: first report)");
  cmp->add_option("--csv", compare_csv, "also write the table as CSV");

  std::string suite = "all";
  std::filesystem::path kat_dir = default_kat_dir();
  auto* kat = app.add_subcommand("kat", "run conformance vectors");
  kat->add_option("--suite", suite, "vector suite")->check(CLI::IsMember({"mlkem", "aead", "prf", "x25519", "all"}));
  kat->add_option("--dir", kat_dir, "vector directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, iterations, seed, out_dir, format);
    if (*cmp) return cmd_compare(reports, baseline, compare_csv);
    return cmd_kat(suite, kat_dir);
  } catch (const Error& e) {
    std::fprintf(stderr, "bench: %s\n", e.what());
    return exit_code(e);
  }
}
