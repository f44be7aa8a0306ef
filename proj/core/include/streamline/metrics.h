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

#ifndef STREAMLINE_METRICS_H_
#define STREAMLINE_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamline/kernel.h"

namespace streamline::sim {

struct CurvePoint {
  double labels = 0.0;
  double metric = 0.0;
};

// Labels at which the curve first reaches target, interpolating linearly
// between measured points. nullopt if never reached.
std::optional<double> labels_to_reach(std::span<const CurvePoint> curve,
                                      double target);

// labels_random(target) / labels_method(target); nullopt if either curve
// misses the target.
std::optional<double> labeling_efficiency(std::span<const CurvePoint> method,
                                          std::span<const CurvePoint> random,
                                          double target);

enum class MetricKind { kRare, kFull };

struct RoundMetrics {
  std::size_t round = 0;
  std::size_t true_slice = 0;
  std::optional<std::size_t> identified_slice;  // streamline variants only
  std::int64_t granted_b = 0;
  double gamma = 0.0;
  std::size_t labels_total = 0;  // labeled pool size after the round
  double full_metric = 0.0;
  double rare_metric = 0.0;
  std::vector<double> slice_metrics;
  std::vector<std::size_t> pool_sizes;
  std::vector<ItemId> selected;
};

struct MetricsLog {
  std::string method;
  std::uint64_t seed = 0;
  std::size_t initial_labels = 0;
  double initial_full = 0.0;
  double initial_rare = 0.0;
  std::vector<std::size_t> initial_pool_sizes;
  std::vector<RoundMetrics> rounds;

  std::int64_t labels_spent() const;
  // Includes the pre-selection point.
  std::vector<CurvePoint> curve(MetricKind kind) const;
  const RoundMetrics& final_round() const { return rounds.back(); }
};

}  // namespace streamline::sim

#endif  // STREAMLINE_METRICS_H_
