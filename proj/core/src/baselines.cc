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

#include "streamline/baselines.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "streamline/error.h"
#include "streamline/submodular.h"

namespace streamline::baselines {
namespace {

constexpr double kSimplexTolerance = 1e-6;

void check_simplex(const std::vector<double>& p) {
  if (p.empty()) {
    throw Error(ErrorCode::kEmptyInput, "probability vector is empty");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probabilities must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "probabilities must sum to 1, got " + std::to_string(sum));
  }
}

double box_score(std::span<const double> p, UncertaintyMode mode) {
  switch (mode) {
    case UncertaintyMode::kEntropy: {
      double h = 0.0;
      for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
      }
      return h;
    }
    case UncertaintyMode::kLeastConfidence:
      return 1.0 - *std::max_element(p.begin(), p.end());
    case UncertaintyMode::kMargin: {
      double first = 0.0;
      double second = 0.0;
      for (double v : p) {
        if (v > first) {
          second = first;
          first = v;
        } else if (v > second) {
          second = v;
        }
      }
      return first - second;
    }
  }
  return 0.0;
}

std::vector<Embedding> normalized(std::span<const Embedding> xs) {
  std::vector<Embedding> out;
  out.reserve(xs.size());
  for (const Embedding& e : xs) out.push_back(e.normalized());
  return out;
}

double squared_distance(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<std::size_t> random_select(std::size_t n, std::size_t b,
                                       std::uint64_t seed) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (b >= n) return all;
  std::vector<std::size_t> out;
  out.reserve(b);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out), b, rng);
  return out;
}

PredictionRecord::PredictionRecord(std::vector<std::vector<double>> boxes,
                                   bool detection)
    : boxes_(std::move(boxes)), detection_(detection) {
  for (const auto& p : boxes_) check_simplex(p);
}

PredictionRecord PredictionRecord::classification(std::vector<double> probs) {
  std::vector<std::vector<double>> boxes;
  boxes.push_back(std::move(probs));
  return PredictionRecord(std::move(boxes), false);
}

PredictionRecord PredictionRecord::detection(
    std::vector<std::vector<double>> boxes) {
  if (boxes.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "detection item has no boxes to score");
  }
  return PredictionRecord(std::move(boxes), true);
}

double uncertainty_score(const PredictionRecord& record, UncertaintyMode mode) {
  double total = 0.0;
  for (const auto& p : record.boxes()) total += box_score(p, mode);
  return total / static_cast<double>(record.boxes().size());
}

std::vector<double> uncertainty_scores(std::span<const PredictionRecord> records,
                                       UncertaintyMode mode) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(uncertainty_score(r, mode));
  return out;
}

std::vector<std::size_t> uncertainty_select(
    std::span<const PredictionRecord> records, UncertaintyMode mode,
    std::size_t b) {
  const auto scores = uncertainty_scores(records, mode);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool ascending = mode == UncertaintyMode::kMargin;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t c) {
                     return ascending ? scores[a] < scores[c]
                                      : scores[a] > scores[c];
                   });
  order.resize(std::min(b, order.size()));
  return order;
}

SelectionTrace submodular_fl_select(std::span<const Embedding> features,
                                    std::size_t b, const MaximizerConfig& cfg) {
  if (features.empty() || b == 0) return {};
  const auto u = normalized(features);
  const FacilityLocation fl(build_kernel(u, u));
  MaximizerConfig local = cfg;
  local.budget = b;
  local.partitions = std::min(local.partitions, u.size());
  return maximize(fl, local);
}

SelectionTrace similar_select(std::span<const Embedding> features,
                              std::span<const Embedding> query, std::size_t b,
                              const MaximizerConfig& cfg) {
  if (query.empty()) {
    throw Error(ErrorCode::kEmptySlice,
                "similar_select needs a nonempty query slice");
  }
  if (features.empty() || b == 0) return {};
  const auto u = normalized(features);
  const auto q = normalized(query);
  const Flqmi mi(build_kernel(u, q));
  MaximizerConfig local = cfg;
  local.budget = b;
  local.partitions = std::min(local.partitions, u.size());
  return maximize(mi, local);
}

std::vector<double> gradient_embedding(std::span<const double> probs,
                                       std::span<const double> features) {
  if (probs.empty() || features.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "gradient embedding needs probabilities and features");
  }
  const std::size_t predicted = static_cast<std::size_t>(
      std::max_element(probs.begin(), probs.end()) - probs.begin());
  std::vector<double> out;
  out.reserve(probs.size() * features.size());
  for (std::size_t c = 0; c < probs.size(); ++c) {
    const double scale = probs[c] - (c == predicted ? 1.0 : 0.0);
    for (double x : features) out.push_back(scale * x);
  }
  return out;
}

std::vector<std::size_t> kmeanspp_seed(
    std::span<const std::vector<double>> points, std::size_t b,
    std::uint64_t seed) {
  const std::size_t n = points.size();
  b = std::min(b, n);
  std::vector<std::size_t> picks;
  if (b == 0) return picks;
  picks.reserve(b);

  std::mt19937_64 rng(seed);
  std::vector<bool> picked(n, false);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  auto pick_uniform_unpicked = [&] {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n; ++i) {
      if (!picked[i]) open.push_back(i);
    }
    std::uniform_int_distribution<std::size_t> dist(0, open.size() - 1);
    return open[dist(rng)];
  };

  std::size_t next = pick_uniform_unpicked();
  while (true) {
    picked[next] = true;
    picks.push_back(next);
    if (picks.size() == b) break;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (picked[i]) {
        nearest[i] = 0.0;
        continue;
      }
      nearest[i] = std::min(nearest[i], squared_distance(points[i], points[next]));
      total += nearest[i];
    }
    if (!(total > 0.0)) {
      next = pick_uniform_unpicked();
      continue;
    }
    std::uniform_real_distribution<double> dist(0.0, total);
    const double target = dist(rng);
    double acc = 0.0;
    next = n;
    std::size_t last_positive = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (picked[i] || nearest[i] <= 0.0) continue;
      last_positive = i;
      acc += nearest[i];
      if (target < acc) {
        next = i;
        break;
      }
    }
    if (next == n) next = last_positive;  // rounding at the top end
  }
  return picks;
}

std::vector<std::size_t> badge_select(std::span<const PredictionRecord> records,
                                      std::span<const Embedding> features,
                                      std::size_t b, std::uint64_t seed) {
  if (records.size() != features.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "badge needs one prediction per feature vector");
  }
  std::vector<std::vector<double>> grads;
  grads.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    grads.push_back(gradient_embedding(records[i].probs(), features[i].values()));
  }
  return kmeanspp_seed(grads, b, seed);
}

}  // namespace streamline::baselines
