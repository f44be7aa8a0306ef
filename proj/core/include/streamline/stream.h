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

#ifndef STREAMLINE_STREAM_H_
#define STREAMLINE_STREAM_H_

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "streamline/embedding_io.h"
#include "streamline/kernel.h"
#include "streamline/streamline.h"

namespace streamline::sim {

enum class SchedulePreset {
  kEveryK,      // rare slice every k-th round, common slices cycle otherwise
  kSequential,  // slices presented one after another in equal blocks
  kExplicit,    // StreamSpec::explicit_schedule
};

// Episodic multi-slice stream. Slices are Gaussian class mixtures whose
// centroids sit `separation` noise standard deviations apart; class means
// mix a direction shared by every slice with a slice-specific one.
struct StreamSpec {
  std::size_t slices = 4;
  std::size_t classes = 4;
  std::size_t dim = 16;
  double separation = 6.0;
  double noise_std = 1.0;
  double class_scale = 2.0;
  double shared_class_weight = 0.5;  // in [0, 1]
  std::vector<std::size_t> rare_slices = {3};

  double imbalance = 5.0;  // common : rare initial pool size
  std::size_t common_initial_size = 150;

  std::size_t rounds = 12;
  SchedulePreset schedule = SchedulePreset::kEveryK;
  std::size_t rare_every = 3;
  std::vector<std::size_t> explicit_schedule;

  std::size_t redundancy = 1;  // copies of each unique item per episode
  std::size_t episode_size = 200;
  std::size_t eval_per_slice = 500;
  std::uint64_t seed = 0;

  // Throws kConfig naming the offending field.
  void validate() const;
  std::size_t rare_initial_size() const;
  bool is_rare(std::size_t slice) const;
  // Slice presented in each round; throws when rounds exceed an explicit
  // schedule.
  std::vector<std::size_t> episode_schedule() const;
};

struct EvalSet {
  std::vector<Embedding> features;
  std::vector<int> labels;
  std::vector<std::size_t> slices;

  std::size_t size() const { return features.size(); }
};

struct EpisodeStream {
  SlicedLabeledPool initial_pool;
  std::vector<UnlabeledBuffer> episodes;  // true_slice set on each
  EvalSet eval;
  std::size_t classes = 0;
  std::vector<bool> rare;  // per slice
  std::unordered_map<ItemId, int> hidden_labels;

  int label_of(ItemId id) const { return hidden_labels.at(id); }
};

// Pure function of spec (including spec.seed).
EpisodeStream generate_stream(const StreamSpec& spec);

// Same protocol over a precomputed, annotated embedding table: the initial
// pool, episodes and eval set are drawn per slice without replacement.
// Uses spec's sizes, schedule, redundancy and seed; ignores the Gaussian
// parameters. Throws kInvalidArgument when a slice runs out of items.
EpisodeStream stream_from_table(const EmbeddingTable& table,
                                const StreamSpec& spec);

}  // namespace streamline::sim

#endif  // STREAMLINE_STREAM_H_
