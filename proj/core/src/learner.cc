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

#include "streamline/learner.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <variant>

#include "streamline/error.h"

namespace streamline::sim {

void LearnerHyper::validate() const {
  if (!(step_size > 0.0 && step_size < 2.0)) {
    throw Error(ErrorCode::kConfig, "learner.step_size: must lie in (0, 2)");
  }
  if (epochs == 0) throw Error(ErrorCode::kConfig, "learner.epochs: must be >= 1");
  if (!(l2 >= 0.0)) throw Error(ErrorCode::kConfig, "learner.l2: must be >= 0");
  if (!(init_scale >= 0.0)) {
    throw Error(ErrorCode::kConfig, "learner.init_scale: must be >= 0");
  }
}

TrainingSet training_set(const SlicedLabeledPool& pool) {
  TrainingSet out;
  for (std::size_t t = 0; t < pool.slice_count(); ++t) {
    for (const auto& item : pool.slice(t).items) {
      const auto* e = std::get_if<Embedding>(&item.payload);
      if (e == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "the learner trains on flat embeddings only");
      }
      out.features.push_back(*e);
      out.labels.push_back(item.label);
    }
  }
  return out;
}

std::vector<double> softmax_scores(const LogisticParams& params,
                                   std::span<const double> x) {
  std::vector<double> z(params.classes);
  for (std::size_t c = 0; c < params.classes; ++c) {
    z[c] = params.bias[c] +
           dot(std::span<const double>(params.weights).subspan(c * params.dim,
                                                               params.dim),
               x);
  }
  const double top = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : z) v /= total;
  return z;
}

LossGradient loss_and_gradient(const LogisticParams& params,
                               std::span<const std::vector<double>> x,
                               std::span<const int> y, double l2) {
  if (x.empty() || x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "features and labels must be nonempty and of equal length");
  }
  LossGradient out;
  out.gradient = params;
  std::fill(out.gradient.weights.begin(), out.gradient.weights.end(), 0.0);
  std::fill(out.gradient.bias.begin(), out.gradient.bias.end(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto p = softmax_scores(params, x[i]);
    const auto label = static_cast<std::size_t>(y[i]);
    out.loss -= std::log(std::max(p[label], 1e-300)) * inv_n;
    p[label] -= 1.0;
    for (std::size_t c = 0; c < params.classes; ++c) {
      const double g = p[c] * inv_n;
      out.gradient.bias[c] += g;
      double* row = out.gradient.weights.data() + c * params.dim;
      for (std::size_t k = 0; k < params.dim; ++k) row[k] += g * x[i][k];
    }
  }
  double sq = 0.0;
  for (std::size_t k = 0; k < params.weights.size(); ++k) {
    sq += params.weights[k] * params.weights[k];
    out.gradient.weights[k] += l2 * params.weights[k];
  }
  out.loss += 0.5 * l2 * sq;
  return out;
}

Learner::Learner(LogisticParams params, std::vector<double> mean,
                 std::vector<double> scale, std::vector<double> loss_history)
    : params_(std::move(params)),
      mean_(std::move(mean)),
      scale_(std::move(scale)),
      loss_history_(std::move(loss_history)) {}

std::vector<double> Learner::predict_proba(const Embedding& x) const {
  if (x.dim() != params_.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected dim " + std::to_string(params_.dim) + ", got " +
                    std::to_string(x.dim()));
  }
  std::vector<double> z(x.values().begin(), x.values().end());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = (z[k] - mean_[k]) / scale_[k];
  return softmax_scores(params_, z);
}

int Learner::predict(const Embedding& x) const {
  const auto p = predict_proba(x);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

Learner train_learner(const TrainingSet& data, std::size_t classes,
                      const LearnerHyper& hyper) {
  hyper.validate();
  if (data.features.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot train on an empty pool");
  }
  if (data.features.size() != data.labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "features/labels length differ");
  }
  if (classes == 0) throw Error(ErrorCode::kInvalidArgument, "classes must be >= 1");
  const std::size_t n = data.features.size();
  const std::size_t dim = data.features.front().dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (data.features[i].dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "mixed embedding dimensions");
    }
    if (data.labels[i] < 0 || static_cast<std::size_t>(data.labels[i]) >= classes) {
      throw Error(ErrorCode::kOutOfRange,
                  "label " + std::to_string(data.labels[i]) + " outside [0, " +
                      std::to_string(classes) + ")");
    }
  }

  std::vector<double> mean(dim, 0.0);
  std::vector<double> scale(dim, 0.0);
  for (const auto& f : data.features) {
    for (std::size_t k = 0; k < dim; ++k) mean[k] += f.values()[k];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (const auto& f : data.features) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = f.values()[k] - mean[k];
      scale[k] += d * d;
    }
  }
  for (double& s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (s < 1e-12) s = 1.0;
  }

  std::vector<std::vector<double>> x(n, std::vector<double>(dim));
  double max_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      x[i][k] = (data.features[i].values()[k] - mean[k]) / scale[k];
      sq += x[i][k] * x[i][k];
    }
    max_sq = std::max(max_sq, sq);
  }

  LogisticParams params{classes, dim, std::vector<double>(classes * dim),
                        std::vector<double>(classes, 0.0)};
  std::mt19937_64 rng(hyper.seed);
  std::normal_distribution<double> init(0.0, 1.0);
  for (double& w : params.weights) w = hyper.init_scale * init(rng);

  // Softmax cross-entropy curvature is bounded by 0.5 * (||x||^2 + 1).
  const double lr = hyper.step_size / (0.5 * (max_sq + 1.0) + hyper.l2);
  std::vector<double> history;
  history.reserve(hyper.epochs + 1);
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    const auto lg = loss_and_gradient(params, x, data.labels, hyper.l2);
    history.push_back(lg.loss);
    for (std::size_t k = 0; k < params.weights.size(); ++k) {
      params.weights[k] -= lr * lg.gradient.weights[k];
    }
    for (std::size_t c = 0; c < classes; ++c) params.bias[c] -= lr * lg.gradient.bias[c];
  }
  history.push_back(loss_and_gradient(params, x, data.labels, hyper.l2).loss);
  return Learner(std::move(params), std::move(mean), std::move(scale),
                 std::move(history));
}

Learner train_learner(const SlicedLabeledPool& pool, std::size_t classes,
                      const LearnerHyper& hyper) {
  return train_learner(training_set(pool), classes, hyper);
}

EvalResult evaluate_predictions(std::span<const int> predicted,
                                std::span<const int> labels,
                                std::span<const std::size_t> slices) {
  if (predicted.size() != labels.size() || labels.size() != slices.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "evaluation arrays differ in length");
  }
  if (labels.empty()) throw Error(ErrorCode::kEmptyInput, "empty evaluation set");
  const std::size_t t = *std::max_element(slices.begin(), slices.end()) + 1;
  std::vector<std::size_t> hits(t, 0), totals(t, 0);
  std::size_t all_hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool hit = predicted[i] == labels[i];
    all_hits += hit;
    hits[slices[i]] += hit;
    ++totals[slices[i]];
  }
  EvalResult out;
  out.full = static_cast<double>(all_hits) / static_cast<double>(labels.size());
  for (std::size_t s = 0; s < t; ++s) {
    if (totals[s] == 0) {
      throw Error(ErrorCode::kEmptySlice,
                  "evaluation slice " + std::to_string(s) + " has no items");
    }
    out.per_slice.push_back(static_cast<double>(hits[s]) /
                            static_cast<double>(totals[s]));
  }
  return out;
}

EvalResult evaluate(const Learner& learner, const EvalSet& eval) {
  std::vector<int> predicted;
  predicted.reserve(eval.size());
  for (const auto& x : eval.features) predicted.push_back(learner.predict(x));
  return evaluate_predictions(predicted, eval.labels, eval.slices);
}

}  // namespace streamline::sim
