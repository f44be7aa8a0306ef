// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#ifdef STREAMLINE_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "streamline/config.h"
#include "streamline/error.h"
#include "streamline/runner.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;
constexpr const char* kSeedEnv = "STREAMLINE_SEED";

streamline::ExperimentConfig load(const std::string& path) {
  auto cfg = streamline::parse_config(path);
  if (const char* seed = std::getenv(kSeedEnv)) {
    streamline::apply_seed_override(cfg, seed);
  }
  return cfg;
}

int classify(const streamline::Error& e) {
  return e.code() == streamline::ErrorCode::kConfig ? kConfigError : kRuntimeError;
}

int cmd_run(const std::string& config, const std::string& out_dir, int workers) {
  streamline::ExperimentConfig cfg;
  try {
    cfg = load(config);
    if (workers > 0) cfg.workers = static_cast<std::size_t>(workers);
  } catch (const streamline::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return e.code() == streamline::ErrorCode::kIo ? kConfigError : classify(e);
  }
  try {
    const std::string dir = out_dir.empty() ? cfg.output.value_or("") : out_dir;
    if (dir.empty()) {
      std::cerr << "config error: output: give --out or set output\n";
      return kConfigError;
    }
    streamline::prepare_output_dir(dir);
    const auto logs = streamline::run_all(cfg);
    streamline::write_outputs(dir, logs);
    std::cout << "wrote " << logs.size() << " runs to " << dir << '\n';
  } catch (const streamline::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int cmd_validate(const std::string& config) {
  try {
    const auto cfg = load(config);
    std::cout << "ok: " << cfg.methods.size() << " methods x "
              << cfg.seeds.size() << " seeds, " << cfg.stream.rounds
              << " rounds\n";
  } catch (const streamline::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

int cmd_efficiency(const std::string& metrics, double target,
                   const std::string& metric) {
  try {
    std::ifstream in(metrics, std::ios::binary);
    if (!in) throw streamline::Error(streamline::ErrorCode::kIo, "cannot read " + metrics);
    const auto rows = streamline::read_metrics_csv(in);
    const auto kind = metric == "full" ? streamline::sim::MetricKind::kFull
                                       : streamline::sim::MetricKind::kRare;
    std::cout << "method,labeling_efficiency\n";
    for (const auto& e : streamline::efficiency_from_rows(rows, target, kind)) {
      std::cout << e.method << ','
                << (e.efficiency ? streamline::format_number(*e.efficiency)
                                 : std::string("undefined"))
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slice-aware active learning experiments"};
  app.require_subcommand(1);

  std::string config, out_dir, metrics, metric = "rare";
  int workers = 0;
  double target = 0.0;

  auto* run = app.add_subcommand("run", "Run the configured experiment");
  run->add_option("--config", config, "JSON config")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a config and exit");
  validate->add_option("--config", config, "JSON config")->required();

  auto* eff = app.add_subcommand("efficiency", "Labeling efficiency vs random");
  eff->add_option("--metrics", metrics, "metrics.csv from a run")->required();
  eff->add_option("--target", target, "Target metric value")->required();
  eff->add_option("--metric", metric, "rare or full")
      ->check(CLI::IsMember({"rare", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  if (run->parsed()) return cmd_run(config, out_dir, workers);
  if (validate->parsed()) return cmd_validate(config);
  return cmd_efficiency(metrics, target, metric);
}
