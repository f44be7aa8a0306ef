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

#ifndef STREAMLINE_EXPERIMENT_H_
#define STREAMLINE_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "streamline/learner.h"
#include "streamline/maximize.h"
#include "streamline/metrics.h"
#include "streamline/stream.h"
#include "streamline/streamline.h"

namespace streamline::sim {

enum class Method {
  kStreamline,
  kRandom,
  kEntropy,
  kMargin,
  kLeastConf,
  kSubmodular,
  kSimilar,
  kBadge,
  kStreamlineNoScg,    // random selection inside the identified slice
  kStreamlineReplScg,  // BADGE selection inside the identified slice
  kStreamlineNoBudget, // fixed b = B
};

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
const std::vector<Method>& all_methods();
bool is_streamline_variant(Method m);

struct ExperimentHyper {
  std::int64_t budget = 50;
  double rho = 0.5;
  MaximizerConfig maximizer;  // budget and seed are set per round
  LearnerHyper learner;
  RarityRule rarity = RarityRule::kConfigured;
  // SIMILAR: compare BADGE-style gradient embeddings instead of raw features.
  bool similar_gradient_features = false;

  void validate() const;
};

// Runs every scheduled episode. Baselines add their picks to the episode's
// true slice; streamline variants add them to the identified slice.
MetricsLog run_experiment(const EpisodeStream& stream, Method method,
                          const ExperimentHyper& hyper, std::uint64_t seed);

// Generates the stream from spec (spec.seed) and runs with the same seed.
MetricsLog run_experiment(const StreamSpec& spec, Method method,
                          const ExperimentHyper& hyper);

}  // namespace streamline::sim

#endif  // STREAMLINE_EXPERIMENT_H_
