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

#ifndef STREAMLINE_RUNNER_H_
#define STREAMLINE_RUNNER_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamline/config.h"
#include "streamline/metrics.h"

namespace streamline {

// Logs ordered by (method, seed) as listed in the config, regardless of
// worker count.
std::vector<sim::MetricsLog> run_all(const ExperimentConfig& cfg);

void write_metrics_csv(std::ostream& out, const std::vector<sim::MetricsLog>& logs);
void write_selections_jsonl(std::ostream& out,
                            const std::vector<sim::MetricsLog>& logs);
nlohmann::ordered_json summarize(const std::vector<sim::MetricsLog>& logs);

// Creates dir if needed and checks that it is writable; throws kIo.
void prepare_output_dir(const std::filesystem::path& dir);
void write_outputs(const std::filesystem::path& dir,
                   const std::vector<sim::MetricsLog>& logs);

struct MetricsRow {
  std::string method;
  std::uint64_t seed = 0;
  std::size_t round = 0;
  double labels_total = 0.0;
  double full_metric = 0.0;
  double rare_metric = 0.0;
};

// Parses what write_metrics_csv emits; throws kFormat with the line number.
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

struct MethodEfficiency {
  std::string method;
  std::optional<double> efficiency;
};

// Seed-averaged curve per method against the seed-averaged random curve.
// Throws kInvalidArgument when no random rows are present.
std::vector<MethodEfficiency> efficiency_from_rows(
    const std::vector<MetricsRow>& rows, double target, sim::MetricKind kind);

std::string format_number(double v);

}  // namespace streamline

#endif  // STREAMLINE_RUNNER_H_
