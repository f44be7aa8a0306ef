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

#include "streamline/maximize.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "streamline/error.h"

namespace streamline {
namespace {

std::size_t effective_budget(const SetFunction& f, const MaximizerConfig& cfg) {
  return std::min(cfg.budget, f.ground_size());
}

struct Bound {
  double gain;
  std::size_t id;
  std::size_t stamp;  // |A| at which gain was computed
};

// Max-heap on gain, smallest id first among equal gains.
struct BoundOrder {
  bool operator()(const Bound& a, const Bound& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  }
};

}  // namespace

void MaximizerConfig::validate() const {
  const bool stochastic = algorithm == Algorithm::kStochastic;
  if (stochastic && !epsilon) {
    throw Error(ErrorCode::kInvalidArgument,
                "stochastic greedy requires epsilon");
  }
  if (!stochastic && epsilon) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon is only meaningful for stochastic greedy");
  }
  if (epsilon && !(*epsilon > 0.0 && *epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon must lie in (0, 1), got " + std::to_string(*epsilon));
  }
  if (partitions == 0) {
    throw Error(ErrorCode::kInvalidArgument, "partitions must be >= 1");
  }
}

SelectionTrace naive_greedy(const SetFunction& f, const MaximizerConfig& cfg) {
  SelectionTrace trace;
  const std::size_t n = f.ground_size();
  const std::size_t b = effective_budget(f, cfg);
  auto state = f.make_state();
  std::vector<bool> taken(n, false);
  for (std::size_t step = 0; step < b; ++step) {
    std::size_t best = n;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      const double g = state->gain(j);
      ++trace.evaluations;
      if (best == n || g > best_gain) {
        best = j;
        best_gain = g;
      }
    }
    taken[best] = true;
    state->add(best);
    trace.chosen.push_back(best);
    trace.gains.push_back(best_gain);
  }
  return trace;
}

SelectionTrace lazy_greedy(const SetFunction& f, const MaximizerConfig& cfg) {
  SelectionTrace trace;
  const std::size_t n = f.ground_size();
  const std::size_t b = effective_budget(f, cfg);
  if (b == 0) return trace;
  auto state = f.make_state();

  std::vector<Bound> initial;
  initial.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    initial.push_back({state->gain(j), j, 0});
    ++trace.evaluations;
  }
  std::priority_queue<Bound, std::vector<Bound>, BoundOrder> queue(
      BoundOrder{}, std::move(initial));

  while (trace.chosen.size() < b) {
    Bound top = queue.top();
    queue.pop();
    const std::size_t size = trace.chosen.size();
    if (top.stamp == size) {
      state->add(top.id);
      trace.chosen.push_back(top.id);
      trace.gains.push_back(top.gain);
      continue;
    }
    top.gain = state->gain(top.id);
    top.stamp = size;
    ++trace.evaluations;
    queue.push(top);
  }
  return trace;
}

std::size_t stochastic_sample_size(std::size_t ground_size, std::size_t budget,
                                   double epsilon) {
  if (budget == 0) return 0;
  const double s = std::ceil(static_cast<double>(ground_size) /
                             static_cast<double>(budget) *
                             std::log(1.0 / epsilon));
  return std::max<std::size_t>(1, static_cast<std::size_t>(s));
}

SelectionTrace stochastic_greedy(const SetFunction& f,
                                 const MaximizerConfig& cfg) {
  if (!cfg.epsilon) {
    throw Error(ErrorCode::kInvalidArgument,
                "stochastic greedy requires epsilon");
  }
  SelectionTrace trace;
  const std::size_t n = f.ground_size();
  const std::size_t b = effective_budget(f, cfg);
  if (b == 0) return trace;
  const std::size_t sample_size = stochastic_sample_size(n, b, *cfg.epsilon);

  std::mt19937_64 rng(cfg.seed);
  auto state = f.make_state();
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> sample;

  for (std::size_t step = 0; step < b; ++step) {
    sample.clear();
    if (sample_size >= remaining.size()) {
      sample = remaining;
    } else {
      // std::sample preserves the ascending order of `remaining`.
      std::sample(remaining.begin(), remaining.end(),
                  std::back_inserter(sample), sample_size, rng);
    }
    std::size_t best = n;
    double best_gain = 0.0;
    for (std::size_t j : sample) {
      const double g = state->gain(j);
      ++trace.evaluations;
      if (best == n || g > best_gain) {
        best = j;
        best_gain = g;
      }
    }
    state->add(best);
    trace.chosen.push_back(best);
    trace.gains.push_back(best_gain);
    remaining.erase(std::lower_bound(remaining.begin(), remaining.end(), best));
  }
  return trace;
}

std::vector<std::vector<std::size_t>> round_robin_partitions(
    std::size_t ground_size, std::size_t partitions) {
  if (partitions == 0 || partitions > ground_size) {
    throw Error(ErrorCode::kInvalidArgument,
                "partition count " + std::to_string(partitions) +
                    " must be in [1, ground size " +
                    std::to_string(ground_size) + "]");
  }
  std::vector<std::vector<std::size_t>> parts(partitions);
  for (std::size_t i = 0; i < ground_size; ++i) {
    parts[i % partitions].push_back(i);
  }
  return parts;
}

namespace {

SelectionTrace run_base(const SetFunction& f, const MaximizerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kNaive: return naive_greedy(f, cfg);
    case Algorithm::kLazy: return lazy_greedy(f, cfg);
    case Algorithm::kStochastic: return stochastic_greedy(f, cfg);
  }
  return {};
}

}  // namespace

SelectionTrace partitioned_maximize(std::size_t ground_size,
                                    const PartitionBuilder& builder,
                                    const MaximizerConfig& cfg) {
  cfg.validate();
  const auto parts = round_robin_partitions(ground_size, cfg.partitions);
  const std::size_t p = parts.size();
  const std::size_t b = std::min(cfg.budget, ground_size);

  SelectionTrace trace;
  for (std::size_t k = 0; k < p; ++k) {
    MaximizerConfig local = cfg;
    local.partitions = 1;
    local.budget = b / p + (k < b % p ? 1 : 0);
    local.seed = cfg.seed + k;
    if (local.budget == 0) continue;
    const auto f = builder(parts[k]);
    const SelectionTrace part = run_base(*f, local);
    for (std::size_t i = 0; i < part.chosen.size(); ++i) {
      trace.chosen.push_back(parts[k][part.chosen[i]]);
      trace.gains.push_back(part.gains[i]);
    }
    trace.evaluations += part.evaluations;
  }
  return trace;
}

SelectionTrace maximize(const SetFunction& f, const MaximizerConfig& cfg) {
  cfg.validate();
  if (cfg.partitions > 1) {
    return partitioned_maximize(
        f.ground_size(),
        [&f](std::span<const std::size_t> ids) { return f.restrict_to(ids); },
        cfg);
  }
  return run_base(f, cfg);
}

}  // namespace streamline
