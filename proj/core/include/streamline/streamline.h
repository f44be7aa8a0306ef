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

#ifndef STREAMLINE_STREAMLINE_H_
#define STREAMLINE_STREAMLINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "streamline/kernel.h"
#include "streamline/maximize.h"

namespace streamline {

struct LabeledItem {
  ItemId id = 0;
  int label = 0;
  KernelItem payload;
};

struct Slice {
  std::vector<LabeledItem> items;
  bool rare = false;
};

// Slice sizes plus the rare/common designation, the only pool facts the
// budgeting step looks at.
struct SliceCensus {
  std::vector<std::size_t> sizes;
  std::vector<bool> rare;
};

// The labeled buffer, partitioned into T >= 1 slices with disjoint item ids.
class SlicedLabeledPool {
 public:
  explicit SlicedLabeledPool(std::vector<Slice> slices);

  std::size_t slice_count() const { return slices_.size(); }
  const Slice& slice(std::size_t t) const { return slices_.at(t); }
  std::size_t slice_size(std::size_t t) const { return slices_.at(t).items.size(); }
  bool is_rare(std::size_t t) const { return slices_.at(t).rare; }
  std::size_t total_size() const { return ids_.size(); }
  bool contains(ItemId id) const { return ids_.contains(id); }
  std::vector<std::size_t> sizes() const;
  SliceCensus census() const;

  // Appends to slice t; throws kInvalidArgument on a duplicate id.
  void augment(std::size_t t, std::vector<LabeledItem> items);

 private:
  std::vector<Slice> slices_;
  std::unordered_set<ItemId> ids_;
};

struct UnlabeledItem {
  ItemId id = 0;
  KernelItem payload;
};

struct UnlabeledBuffer {
  std::vector<UnlabeledItem> items;
  // Ground truth for reporting only; identification never reads it.
  std::optional<std::size_t> true_slice;
};

// Maps a stored payload to the representation kernels are built from.
using Featurizer = std::function<KernelItem(const KernelItem&)>;

// Identity featurizer with L2 normalization of flat embeddings.
KernelItem normalize_payload(const KernelItem& item);

// ---------------------------------------------------------------------------
// Slice identification

struct Identification {
  std::size_t slice = 0;
  std::vector<double> scores;  // I_F(U; P_i) / (|U| + |P_i|) per slice
};

// kernels[i] is the |U| × |P_i| similarity kernel. Ties go to the smallest
// slice index.
Identification identify_from_kernels(std::span<const SimilarityMatrix> kernels);

struct KernelChoice {
  std::optional<Metric> metric;  // nullopt: default metric for the item kind
  double bandwidth = 1.0;
};

Identification smidentify(const SlicedLabeledPool& pool,
                          const UnlabeledBuffer& unlabeled,
                          const Featurizer& featurizer = normalize_payload,
                          const KernelChoice& kernel = {});

// ---------------------------------------------------------------------------
// Slice-aware budgeting

struct BudgetState {
  std::int64_t base_budget = 0;  // B
  double rho = 0.5;              // minimum budget fraction
  double gamma = 0.0;            // accumulated excess, in items

  void validate() const;
};

enum class BudgetBranch { kRare, kCommon };

struct BudgetDecision {
  BudgetBranch branch = BudgetBranch::kCommon;
  std::int64_t b = 0;        // budget from the allocation rule
  std::int64_t granted = 0;  // b after capping at |U|
  double d = 0.0;            // rare branch: mean common size − |P_t|
  std::size_t beta = 0;      // common branch: min_i |P_i|
  double sigma = 0.0;        // rare branch: amount drawn from gamma
  double gamma_before = 0.0;
  double gamma_after = 0.0;
};

struct BudgetStep {
  BudgetDecision decision;
  BudgetState state;
};

BudgetStep slice_aware_budget(const SliceCensus& census,
                              const BudgetState& state, std::size_t t);

inline BudgetStep slice_aware_budget(const SlicedLabeledPool& pool,
                                     const BudgetState& state, std::size_t t) {
  return slice_aware_budget(pool.census(), state, t);
}

// Rare iff |P_t| < 0.5 × mean size of the other slices.
SliceCensus apply_size_heuristic(const SliceCensus& census);

// ---------------------------------------------------------------------------
// Conditional-gain selection

// Maximizes H(A | P_t) over A ⊆ U, |A| <= b (clamped to |U|). Returns the
// chosen unlabeled item ids in pick order.
std::vector<ItemId> scg_select(const SlicedLabeledPool& pool,
                               const UnlabeledBuffer& unlabeled, std::size_t t,
                               std::size_t b, const MaximizerConfig& maximizer,
                               const Featurizer& featurizer = normalize_payload,
                               const KernelChoice& kernel = {});

// ---------------------------------------------------------------------------
// One round

enum class RarityRule { kConfigured, kSizeHeuristic };

using LabelOracle = std::function<int(ItemId)>;
// Replacement for the conditional-gain step (ablations): returns up to b ids.
using SelectionOverride = std::function<std::vector<ItemId>(
    const SlicedLabeledPool& pool, const UnlabeledBuffer& unlabeled,
    std::size_t t, std::size_t b)>;

struct StreamlineConfig {
  Featurizer identify_featurizer = normalize_payload;
  Featurizer select_featurizer = normalize_payload;
  KernelChoice identify_kernel;
  KernelChoice select_kernel;
  MaximizerConfig maximizer;  // budget is set per round
  RarityRule rarity = RarityRule::kConfigured;
  bool slice_aware = true;  // false: fixed budget B every round
  SelectionOverride selection_override;
};

struct RoundReport {
  Identification identification;
  std::optional<std::size_t> true_slice;
  BudgetDecision budget;
  std::vector<ItemId> selected;

  std::size_t identified_slice() const { return identification.slice; }
  std::optional<bool> identified_correctly() const {
    if (!true_slice) return std::nullopt;
    return *true_slice == identification.slice;
  }
};

// Identify, budget, select, label, and augment the identified slice. The
// pool and budget state are updated in place.
RoundReport streamline_round(SlicedLabeledPool& pool,
                             const UnlabeledBuffer& unlabeled,
                             BudgetState& state, const StreamlineConfig& cfg,
                             const LabelOracle& oracle);

}  // namespace streamline

#endif  // STREAMLINE_STREAMLINE_H_
