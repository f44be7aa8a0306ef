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

#ifndef STREAMLINE_CONFIG_H_
#define STREAMLINE_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/experiment.h"
#include "streamline/stream.h"

namespace streamline {

struct EmbeddingSource {
  std::string path;
  std::string sidecar;
};

struct ExperimentConfig {
  sim::StreamSpec stream;
  std::vector<sim::Method> methods;
  std::vector<std::uint64_t> seeds = {0};
  sim::ExperimentHyper hyper;
  std::size_t workers = 1;
  std::optional<std::string> output;
  std::optional<EmbeddingSource> embeddings;

  // Throws kConfig naming the offending field.
  void validate() const;
};

// JSON document. Unknown keys are rejected. Errors are kConfig (schema) or
// kIo (unreadable file).
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config(const std::string& path);

// Replaces the seed list with the single seed in `value` (decimal).
void apply_seed_override(ExperimentConfig& cfg, std::string_view value);

}  // namespace streamline

#endif  // STREAMLINE_CONFIG_H_
