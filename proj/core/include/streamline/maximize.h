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

#ifndef STREAMLINE_MAXIMIZE_H_
#define STREAMLINE_MAXIMIZE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "streamline/submodular.h"

namespace streamline {

enum class Algorithm { kNaive, kLazy, kStochastic };

struct MaximizerConfig {
  Algorithm algorithm = Algorithm::kLazy;
  std::size_t budget = 0;
  std::optional<double> epsilon;  // set iff algorithm == kStochastic
  std::uint64_t seed = 0;
  std::size_t partitions = 1;  // 1 = no partitioning

  // Throws kInvalidArgument on an inconsistent configuration.
  void validate() const;
};

struct SelectionTrace {
  std::vector<std::size_t> chosen;  // in pick order
  std::vector<double> gains;        // marginal gain at each pick
  std::int64_t evaluations = 0;     // marginal-gain queries issued
};

// Every argmax below breaks ties toward the smallest ground index, so naive
// and lazy greedy produce identical traces.
SelectionTrace naive_greedy(const SetFunction& f, const MaximizerConfig& cfg);
SelectionTrace lazy_greedy(const SetFunction& f, const MaximizerConfig& cfg);
SelectionTrace stochastic_greedy(const SetFunction& f,
                                 const MaximizerConfig& cfg);

// ceil((n / b) · ln(1/ε)), at least 1.
std::size_t stochastic_sample_size(std::size_t ground_size, std::size_t budget,
                                   double epsilon);

// Ground element i goes to partition i mod p.
std::vector<std::vector<std::size_t>> round_robin_partitions(
    std::size_t ground_size, std::size_t partitions);

// Builds the set function restricted to one partition's ground ids.
using PartitionBuilder = std::function<std::unique_ptr<SetFunction>(
    std::span<const std::size_t> ids)>;

// Runs the configured base algorithm on each round-robin partition with
// budget floor(b/p), the remainder going to the lowest-index partitions, and
// returns the union in partition order (ids are global).
SelectionTrace partitioned_maximize(std::size_t ground_size,
                                    const PartitionBuilder& builder,
                                    const MaximizerConfig& cfg);

// Dispatch on cfg.algorithm, partitioning when cfg.partitions > 1.
SelectionTrace maximize(const SetFunction& f, const MaximizerConfig& cfg);

}  // namespace streamline

#endif  // STREAMLINE_MAXIMIZE_H_
