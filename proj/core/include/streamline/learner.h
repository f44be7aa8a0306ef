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

#ifndef STREAMLINE_LEARNER_H_
#define STREAMLINE_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streamline/kernel.h"
#include "streamline/streamline.h"
#include "streamline/stream.h"

namespace streamline::sim {

struct LearnerHyper {
  double step_size = 1.0;  // relative to the curvature bound, must be in (0, 2)
  std::size_t epochs = 200;
  double l2 = 1e-3;
  double init_scale = 1e-2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainingSet {
  std::vector<Embedding> features;
  std::vector<int> labels;
};

// Embedding payloads only; object-set payloads throw kInvalidArgument.
TrainingSet training_set(const SlicedLabeledPool& pool);

// Multinomial logistic regression parameters in standardized feature space.
struct LogisticParams {
  std::size_t classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;  // classes x dim, row-major
  std::vector<double> bias;     // classes
};

struct LossGradient {
  double loss = 0.0;
  LogisticParams gradient;
};

// Mean cross-entropy plus (l2 / 2) * ||W||^2. Inputs are taken as-is.
LossGradient loss_and_gradient(const LogisticParams& params,
                               std::span<const std::vector<double>> x,
                               std::span<const int> y, double l2);

std::vector<double> softmax_scores(const LogisticParams& params,
                                   std::span<const double> x);

class Learner {
 public:
  Learner(LogisticParams params, std::vector<double> mean,
          std::vector<double> scale, std::vector<double> loss_history);

  std::size_t classes() const { return params_.classes; }
  std::size_t dim() const { return params_.dim; }
  const LogisticParams& params() const { return params_; }
  const std::vector<double>& loss_history() const { return loss_history_; }

  std::vector<double> predict_proba(const Embedding& x) const;
  int predict(const Embedding& x) const;

 private:
  LogisticParams params_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> loss_history_;
};

// Throws kEmptyInput on an empty set, kOutOfRange on labels >= classes.
Learner train_learner(const TrainingSet& data, std::size_t classes,
                      const LearnerHyper& hyper);
Learner train_learner(const SlicedLabeledPool& pool, std::size_t classes,
                      const LearnerHyper& hyper);

struct EvalResult {
  double full = 0.0;
  std::vector<double> per_slice;
};

// Throws kEmptySlice if some slice below the largest index has no items.
EvalResult evaluate(const Learner& learner, const EvalSet& eval);
EvalResult evaluate_predictions(std::span<const int> predicted,
                                std::span<const int> labels,
                                std::span<const std::size_t> slices);

}  // namespace streamline::sim

#endif  // STREAMLINE_LEARNER_H_
