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

#ifndef STREAMLINE_BASELINES_H_
#define STREAMLINE_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streamline/kernel.h"
#include "streamline/maximize.h"

// Comparison selectors. All of them return positions into the unlabeled
// buffer they were given, never more than b, never repeated.
namespace streamline::baselines {

// Uniform sample without replacement of min(b, n) positions, ascending.
std::vector<std::size_t> random_select(std::size_t n, std::size_t b,
                                       std::uint64_t seed);

// Class-probability vectors for one item: a single vector for
// classification, one per box for detection.
class PredictionRecord {
 public:
  static PredictionRecord classification(std::vector<double> probs);
  // Throws kEmptyInput when boxes is empty.
  static PredictionRecord detection(std::vector<std::vector<double>> boxes);

  std::span<const std::vector<double>> boxes() const { return boxes_; }
  bool is_detection() const { return detection_; }
  std::span<const double> probs() const { return boxes_.front(); }

 private:
  PredictionRecord(std::vector<std::vector<double>> boxes, bool detection);

  std::vector<std::vector<double>> boxes_;
  bool detection_ = false;
};

enum class UncertaintyMode { kEntropy, kLeastConfidence, kMargin };

// Per-box score averaged over boxes: entropy −Σ p ln p (0 ln 0 = 0),
// least confidence 1 − p_(1), margin p_(1) − p_(2).
double uncertainty_score(const PredictionRecord& record, UncertaintyMode mode);
std::vector<double> uncertainty_scores(std::span<const PredictionRecord> records,
                                       UncertaintyMode mode);

// Most uncertain first: descending entropy / least confidence, ascending
// margin. Ties go to the lower position.
std::vector<std::size_t> uncertainty_select(
    std::span<const PredictionRecord> records, UncertaintyMode mode,
    std::size_t b);

// Facility location over the |U| × |U| cosine kernel of the features.
SelectionTrace submodular_fl_select(std::span<const Embedding> features,
                                    std::size_t b, const MaximizerConfig& cfg);

// FLQMI targeting toward a query set (for example the rare labeled slice).
// Throws kEmptySlice when the query is empty.
SelectionTrace similar_select(std::span<const Embedding> features,
                              std::span<const Embedding> query, std::size_t b,
                              const MaximizerConfig& cfg);

// Hypothesized last-layer loss gradient: block c is (p_c − [c == ŷ]) · x,
// with ŷ = argmax p (lowest class on ties). Length C · dim.
std::vector<double> gradient_embedding(std::span<const double> probs,
                                       std::span<const double> features);

// k-means++ seeding: first pick uniform, then proportional to the squared
// distance to the nearest pick. Falls back to uniform over unpicked points
// when every remaining distance is zero.
std::vector<std::size_t> kmeanspp_seed(
    std::span<const std::vector<double>> points, std::size_t b,
    std::uint64_t seed);

std::vector<std::size_t> badge_select(std::span<const PredictionRecord> records,
                                      std::span<const Embedding> features,
                                      std::size_t b, std::uint64_t seed);

}  // namespace streamline::baselines

#endif  // STREAMLINE_BASELINES_H_
