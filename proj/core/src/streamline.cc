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

#include "streamline/streamline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "streamline/error.h"
#include "streamline/submodular.h"

namespace streamline {
namespace {

// Budget formulas produce values like 429.99999999999994 for an exact 430.
constexpr double kFloorSlack = 1e-9;

std::int64_t floor_items(double v) {
  return static_cast<std::int64_t>(std::floor(v + kFloorSlack));
}

std::vector<KernelItem> featurize(std::span<const LabeledItem> items,
                                  const Featurizer& f) {
  std::vector<KernelItem> out;
  out.reserve(items.size());
  for (const LabeledItem& it : items) out.push_back(f(it.payload));
  return out;
}

std::vector<KernelItem> featurize(std::span<const UnlabeledItem> items,
                                  const Featurizer& f) {
  std::vector<KernelItem> out;
  out.reserve(items.size());
  for (const UnlabeledItem& it : items) out.push_back(f(it.payload));
  return out;
}

KernelOptions resolve(const KernelChoice& choice, const KernelItem& sample) {
  return {choice.metric.value_or(default_metric(sample)), choice.bandwidth};
}

}  // namespace

// ---------------------------------------------------------------------------
// Pool

SlicedLabeledPool::SlicedLabeledPool(std::vector<Slice> slices) {
  if (slices.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a labeled pool needs at least one slice");
  }
  slices_.resize(slices.size());
  for (std::size_t t = 0; t < slices.size(); ++t) {
    slices_[t].rare = slices[t].rare;
    augment(t, std::move(slices[t].items));
  }
}

std::vector<std::size_t> SlicedLabeledPool::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(slices_.size());
  for (const Slice& s : slices_) out.push_back(s.items.size());
  return out;
}

SliceCensus SlicedLabeledPool::census() const {
  SliceCensus c;
  c.sizes = sizes();
  for (const Slice& s : slices_) c.rare.push_back(s.rare);
  return c;
}

void SlicedLabeledPool::augment(std::size_t t, std::vector<LabeledItem> items) {
  if (t >= slices_.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "slice " + std::to_string(t) + " does not exist");
  }
  for (const LabeledItem& it : items) {
    if (ids_.contains(it.id)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "item " + std::to_string(it.id) + " is already labeled");
    }
  }
  for (LabeledItem& it : items) {
    if (!ids_.insert(it.id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "item " + std::to_string(it.id) + " appears twice");
    }
    slices_[t].items.push_back(std::move(it));
  }
}

KernelItem normalize_payload(const KernelItem& item) {
  if (const auto* e = std::get_if<Embedding>(&item)) return e->normalized();
  return item;
}

// ---------------------------------------------------------------------------
// Identification

Identification identify_from_kernels(std::span<const SimilarityMatrix> kernels) {
  if (kernels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no slices to identify against");
  }
  Identification out;
  out.scores.reserve(kernels.size());
  for (std::size_t t = 0; t < kernels.size(); ++t) {
    const SimilarityMatrix& k = kernels[t];
    if (k.cols() == 0) {
      throw Error(ErrorCode::kEmptySlice,
                  "slice " + std::to_string(t) + " is empty");
    }
    if (k.rows() == 0) {
      throw Error(ErrorCode::kEmptyInput, "unlabeled buffer is empty");
    }
    std::vector<std::size_t> all(k.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const double mi = Flqmi(k).value(all);
    out.scores.push_back(mi / flqmi_normalizer(k.rows(), k.cols()));
  }
  for (std::size_t t = 1; t < out.scores.size(); ++t) {
    if (out.scores[t] > out.scores[out.slice]) out.slice = t;
  }
  return out;
}

Identification smidentify(const SlicedLabeledPool& pool,
                          const UnlabeledBuffer& unlabeled,
                          const Featurizer& featurizer,
                          const KernelChoice& kernel) {
  if (unlabeled.items.empty()) {
    throw Error(ErrorCode::kEmptyInput, "unlabeled buffer is empty");
  }
  for (std::size_t t = 0; t < pool.slice_count(); ++t) {
    if (pool.slice_size(t) == 0) {
      throw Error(ErrorCode::kEmptySlice,
                  "slice " + std::to_string(t) +
                      " is empty; identification needs an exemplar per slice");
    }
  }
  const auto u = featurize(unlabeled.items, featurizer);
  const KernelOptions options = resolve(kernel, u.front());
  std::vector<SimilarityMatrix> kernels;
  kernels.reserve(pool.slice_count());
  for (std::size_t t = 0; t < pool.slice_count(); ++t) {
    const auto p = featurize(pool.slice(t).items, featurizer);
    kernels.push_back(build_kernel(u, p, options));
  }
  return identify_from_kernels(kernels);
}

// ---------------------------------------------------------------------------
// Budgeting

void BudgetState::validate() const {
  if (base_budget < 0) {
    throw Error(ErrorCode::kInvalidArgument, "base budget B must be >= 0");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "rho must lie in [0, 1], got " + std::to_string(rho));
  }
  if (!(gamma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 0");
  }
}

BudgetStep slice_aware_budget(const SliceCensus& census,
                              const BudgetState& state, std::size_t t) {
  state.validate();
  if (t >= census.sizes.size() || census.rare.size() != census.sizes.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "slice " + std::to_string(t) + " out of range");
  }
  const double B = static_cast<double>(state.base_budget);
  BudgetStep step{{}, state};
  BudgetDecision& dec = step.decision;
  dec.gamma_before = state.gamma;

  if (census.rare[t]) {
    dec.branch = BudgetBranch::kRare;
    double common_total = 0.0;
    std::size_t common_count = 0;
    for (std::size_t i = 0; i < census.sizes.size(); ++i) {
      if (census.rare[i]) continue;
      common_total += static_cast<double>(census.sizes[i]);
      ++common_count;
    }
    // No common slices: nothing to catch up to.
    dec.d = common_count == 0
                ? 0.0
                : common_total / static_cast<double>(common_count) -
                      static_cast<double>(census.sizes[t]);
    const double wanted = std::clamp(std::min(state.gamma, dec.d - B), 0.0,
                                     state.gamma);
    dec.sigma = static_cast<double>(floor_items(wanted));
    dec.b = state.base_budget + static_cast<std::int64_t>(dec.sigma);
    step.state.gamma = state.gamma - dec.sigma;
  } else {
    dec.branch = BudgetBranch::kCommon;
    dec.beta = *std::min_element(census.sizes.begin(), census.sizes.end());
    const double size_t_ = static_cast<double>(census.sizes[t]);
    const double ratio =
        census.sizes[t] == 0 ? 1.0 : static_cast<double>(dec.beta) / size_t_;
    const double raw = B * state.rho + (1.0 - state.rho) * B * ratio;
    dec.b = std::clamp<std::int64_t>(floor_items(raw), 0, state.base_budget);
    step.state.gamma = state.gamma + (B - static_cast<double>(dec.b));
  }
  dec.granted = dec.b;
  dec.gamma_after = step.state.gamma;
  return step;
}

SliceCensus apply_size_heuristic(const SliceCensus& census) {
  SliceCensus out = census;
  const std::size_t n = census.sizes.size();
  const double total = std::accumulate(census.sizes.begin(),
                                       census.sizes.end(), 0.0);
  out.rare.assign(n, false);
  if (n < 2) return out;
  for (std::size_t t = 0; t < n; ++t) {
    const double s = static_cast<double>(census.sizes[t]);
    const double mean_others = (total - s) / static_cast<double>(n - 1);
    out.rare[t] = s < 0.5 * mean_others;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Selection

std::vector<ItemId> scg_select(const SlicedLabeledPool& pool,
                               const UnlabeledBuffer& unlabeled, std::size_t t,
                               std::size_t b, const MaximizerConfig& maximizer,
                               const Featurizer& featurizer,
                               const KernelChoice& kernel) {
  if (t >= pool.slice_count()) {
    throw Error(ErrorCode::kOutOfRange,
                "slice " + std::to_string(t) + " out of range");
  }
  const std::size_t n = unlabeled.items.size();
  b = std::min(b, n);
  if (b == 0) return {};

  const auto u = featurize(unlabeled.items, featurizer);
  const KernelOptions options = resolve(kernel, u.front());
  SimilarityMatrix uu = build_kernel(u, u, options);
  SimilarityMatrix up = pool.slice_size(t) == 0
                            ? SimilarityMatrix(n, 0, {})
                            : build_kernel(u, featurize(pool.slice(t).items,
                                                        featurizer),
                                           options);
  const Flcg gain(std::move(uu), std::move(up));

  MaximizerConfig cfg = maximizer;
  cfg.budget = b;
  if (cfg.partitions > n) cfg.partitions = n;
  const SelectionTrace trace = maximize(gain, cfg);

  std::vector<ItemId> ids;
  ids.reserve(trace.chosen.size());
  for (std::size_t k : trace.chosen) ids.push_back(unlabeled.items[k].id);
  return ids;
}

// ---------------------------------------------------------------------------
// Round

RoundReport streamline_round(SlicedLabeledPool& pool,
                             const UnlabeledBuffer& unlabeled,
                             BudgetState& state, const StreamlineConfig& cfg,
                             const LabelOracle& oracle) {
  RoundReport report;
  report.true_slice = unlabeled.true_slice;
  report.identification = smidentify(pool, unlabeled, cfg.identify_featurizer,
                                     cfg.identify_kernel);
  const std::size_t t = report.identification.slice;

  if (cfg.slice_aware) {
    SliceCensus census = pool.census();
    if (cfg.rarity == RarityRule::kSizeHeuristic) {
      census = apply_size_heuristic(census);
    }
    BudgetStep step = slice_aware_budget(census, state, t);
    report.budget = step.decision;
    state = step.state;
  } else {
    state.validate();
    report.budget.branch = pool.is_rare(t) ? BudgetBranch::kRare
                                           : BudgetBranch::kCommon;
    report.budget.b = state.base_budget;
    report.budget.gamma_before = report.budget.gamma_after = state.gamma;
  }

  // Cap at |U|; the shortfall goes back to gamma.
  const auto n = static_cast<std::int64_t>(unlabeled.items.size());
  report.budget.granted = std::min(report.budget.b, n);
  if (cfg.slice_aware && report.budget.granted < report.budget.b) {
    state.gamma += static_cast<double>(report.budget.b - report.budget.granted);
    report.budget.gamma_after = state.gamma;
  }
  const auto b = static_cast<std::size_t>(report.budget.granted);

  if (cfg.selection_override) {
    report.selected = cfg.selection_override(pool, unlabeled, t, b);
    if (report.selected.size() > b) report.selected.resize(b);
  } else {
    report.selected = scg_select(pool, unlabeled, t, b, cfg.maximizer,
                                 cfg.select_featurizer, cfg.select_kernel);
  }

  std::vector<LabeledItem> labeled;
  labeled.reserve(report.selected.size());
  for (ItemId id : report.selected) {
    auto it = std::find_if(unlabeled.items.begin(), unlabeled.items.end(),
                           [id](const UnlabeledItem& u) { return u.id == id; });
    if (it == unlabeled.items.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "selected id " + std::to_string(id) +
                      " is not in the unlabeled buffer");
    }
    labeled.push_back({id, oracle(id), it->payload});
  }
  pool.augment(t, std::move(labeled));
  return report;
}

}  // namespace streamline
