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

#include "streamline/stream.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>

#include "seed_mix.h"
#include "streamline/error.h"

namespace streamline::sim {
namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kConfig, "stream." + field + ": " + why);
}

std::vector<double> gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  for (double& x : v) x = normal(rng);
  return v;
}

void scale_to_unit(std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  for (double& x : v) x /= n;
}

// Gram-Schmidt over Gaussian draws; count <= dim.
std::vector<std::vector<double>> orthonormal_directions(std::size_t count,
                                                        std::size_t dim,
                                                        std::mt19937_64& rng) {
  std::vector<std::vector<double>> out;
  while (out.size() < count) {
    auto v = gaussian_vector(dim, rng);
    for (const auto& u : out) {
      const double proj = dot(v, u);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * u[i];
    }
    double n = std::sqrt(dot(v, v));
    if (n < 1e-8) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  return out;
}

// Class means per slice: means[s][c].
struct World {
  std::vector<std::vector<std::vector<double>>> means;
};

World make_world(const StreamSpec& spec, std::mt19937_64& rng) {
  const auto dirs = orthonormal_directions(spec.slices, spec.dim, rng);
  const double radius = spec.separation * spec.noise_std / std::sqrt(2.0);
  std::vector<std::vector<double>> shared;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    shared.push_back(gaussian_vector(spec.dim, rng));
    scale_to_unit(shared.back());
  }
  World w;
  w.means.resize(spec.slices);
  for (std::size_t s = 0; s < spec.slices; ++s) {
    for (std::size_t c = 0; c < spec.classes; ++c) {
      auto own = gaussian_vector(spec.dim, rng);
      scale_to_unit(own);
      std::vector<double> mean(spec.dim);
      for (std::size_t i = 0; i < spec.dim; ++i) {
        const double cls = spec.shared_class_weight * shared[c][i] +
                           (1.0 - spec.shared_class_weight) * own[i];
        mean[i] = radius * dirs[s][i] + spec.class_scale * cls;
      }
      w.means[s].push_back(std::move(mean));
    }
  }
  return w;
}

struct Draw {
  Embedding x;
  int label;
};

Draw draw(const StreamSpec& spec, const World& w, std::size_t slice,
          std::mt19937_64& rng) {
  std::uniform_int_distribution<int> label_dist(
      0, static_cast<int>(spec.classes) - 1);
  std::normal_distribution<double> noise(0.0, spec.noise_std);
  const int label = label_dist(rng);
  std::vector<double> x = w.means[slice][static_cast<std::size_t>(label)];
  for (double& v : x) v += noise(rng);
  return {Embedding(std::move(x)), label};
}

// Shared assembly for both the synthetic and the table-backed streams.
// `next(slice)` yields a fresh (embedding, label) for the slice.
template <typename NextFn>
EpisodeStream assemble(const StreamSpec& spec, std::size_t classes,
                       ItemId first_id, NextFn&& next_initial,
                       NextFn&& next_episode, NextFn&& next_eval) {
  ItemId next_id = first_id;
  std::unordered_map<ItemId, int> hidden;

  std::vector<Slice> slices(spec.slices);
  for (std::size_t s = 0; s < spec.slices; ++s) {
    slices[s].rare = spec.is_rare(s);
    const std::size_t n =
        slices[s].rare ? spec.rare_initial_size() : spec.common_initial_size;
    for (std::size_t k = 0; k < n; ++k) {
      Draw d = next_initial(s);
      hidden[next_id] = d.label;
      slices[s].items.push_back({next_id++, d.label, std::move(d.x)});
    }
  }

  std::vector<UnlabeledBuffer> episodes;
  const std::size_t unique = spec.episode_size / spec.redundancy;
  for (std::size_t slice : spec.episode_schedule()) {
    UnlabeledBuffer buf;
    buf.true_slice = slice;
    buf.items.reserve(spec.episode_size);
    for (std::size_t u = 0; u < unique; ++u) {
      Draw d = next_episode(slice);
      for (std::size_t copy = 0; copy < spec.redundancy; ++copy) {
        hidden[next_id] = d.label;
        buf.items.push_back({next_id++, d.x});
      }
    }
    episodes.push_back(std::move(buf));
  }

  EvalSet eval;
  for (std::size_t s = 0; s < spec.slices; ++s) {
    for (std::size_t k = 0; k < spec.eval_per_slice; ++k) {
      Draw d = next_eval(s);
      eval.features.push_back(std::move(d.x));
      eval.labels.push_back(d.label);
      eval.slices.push_back(s);
    }
  }

  std::vector<bool> rare;
  for (std::size_t s = 0; s < spec.slices; ++s) rare.push_back(spec.is_rare(s));
  return EpisodeStream{SlicedLabeledPool(std::move(slices)), std::move(episodes),
                       std::move(eval), classes, std::move(rare),
                       std::move(hidden)};
}

}  // namespace

void StreamSpec::validate() const {
  if (slices == 0) invalid("slices", "must be >= 1");
  if (classes == 0) invalid("classes", "must be >= 1");
  if (dim == 0) invalid("dim", "must be >= 1");
  if (!(noise_std > 0.0)) invalid("noise_std", "must be > 0");
  if (!(separation >= 0.0)) invalid("separation", "must be >= 0");
  if (!(class_scale >= 0.0)) invalid("class_scale", "must be >= 0");
  if (!(shared_class_weight >= 0.0 && shared_class_weight <= 1.0)) {
    invalid("shared_class_weight", "must lie in [0, 1]");
  }
  std::vector<std::size_t> sorted = rare_slices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    invalid("rare_slices", "contains duplicates");
  }
  for (std::size_t r : rare_slices) {
    if (r >= slices) invalid("rare_slices", "index out of range");
  }
  if (!(imbalance >= 1.0)) invalid("imbalance", "must be >= 1");
  if (common_initial_size == 0) invalid("common_initial_size", "must be >= 1");
  if (rounds == 0) invalid("rounds", "must be >= 1");
  if (rare_every == 0) invalid("rare_every", "must be >= 1");
  if (redundancy == 0) invalid("redundancy", "must be >= 1");
  if (episode_size == 0 || episode_size % redundancy != 0) {
    invalid("episode_size", "must be a positive multiple of redundancy");
  }
  if (eval_per_slice == 0) invalid("eval_per_slice", "must be >= 1");
  if (schedule == SchedulePreset::kExplicit) {
    if (explicit_schedule.size() < rounds) {
      invalid("schedule", "explicit schedule has " +
                              std::to_string(explicit_schedule.size()) +
                              " entries but " + std::to_string(rounds) +
                              " rounds were requested");
    }
    for (std::size_t s : explicit_schedule) {
      if (s >= slices) invalid("schedule", "slice index out of range");
    }
  }
}

std::size_t StreamSpec::rare_initial_size() const {
  const auto n = static_cast<std::size_t>(
      std::llround(static_cast<double>(common_initial_size) / imbalance));
  return std::max<std::size_t>(1, n);
}

bool StreamSpec::is_rare(std::size_t slice) const {
  return std::find(rare_slices.begin(), rare_slices.end(), slice) !=
         rare_slices.end();
}

std::vector<std::size_t> StreamSpec::episode_schedule() const {
  validate();
  std::vector<std::size_t> out;
  out.reserve(rounds);
  switch (schedule) {
    case SchedulePreset::kExplicit:
      out.assign(explicit_schedule.begin(), explicit_schedule.begin() + rounds);
      break;
    case SchedulePreset::kSequential:
      for (std::size_t r = 0; r < rounds; ++r) out.push_back(r * slices / rounds);
      break;
    case SchedulePreset::kEveryK: {
      std::vector<std::size_t> common;
      for (std::size_t s = 0; s < slices; ++s) {
        if (!is_rare(s)) common.push_back(s);
      }
      std::size_t next_rare = 0;
      std::size_t next_common = 0;
      for (std::size_t r = 0; r < rounds; ++r) {
        const bool rare_turn = (r + 1) % rare_every == 0;
        if ((rare_turn && !rare_slices.empty()) || common.empty()) {
          out.push_back(rare_slices[next_rare++ % rare_slices.size()]);
        } else {
          out.push_back(common[next_common++ % common.size()]);
        }
      }
      break;
    }
  }
  return out;
}

EpisodeStream generate_stream(const StreamSpec& spec) {
  spec.validate();
  if (spec.dim < spec.slices) {
    throw Error(ErrorCode::kConfig,
                "stream.dim: must be >= slices to place orthogonal centroids");
  }
  std::mt19937_64 world_rng(internal::mix_seed(spec.seed, 0));
  const World world = make_world(spec, world_rng);

  std::mt19937_64 pool_rng(internal::mix_seed(spec.seed, 1));
  std::mt19937_64 episode_rng(internal::mix_seed(spec.seed, 2));
  std::mt19937_64 eval_rng(internal::mix_seed(spec.seed, 3));
  auto from = [&](std::mt19937_64& rng) {
    return std::function<Draw(std::size_t)>(
        [&spec, &world, &rng](std::size_t s) { return draw(spec, world, s, rng); });
  };
  return assemble(spec, spec.classes, 0, from(pool_rng), from(episode_rng),
                  from(eval_rng));
}

EpisodeStream stream_from_table(const EmbeddingTable& table,
                                const StreamSpec& spec) {
  spec.validate();
  if (!table.has_annotations()) {
    throw Error(ErrorCode::kInvalidArgument,
                "stream construction needs the id/label/slice sidecar");
  }
  // Per-slice shuffled row queues, consumed front to back.
  std::vector<std::vector<std::size_t>> queues(spec.slices);
  int max_label = 0;
  ItemId max_id = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.slices[i] >= spec.slices) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " has slice " +
                      std::to_string(table.slices[i]) + " but stream.slices is " +
                      std::to_string(spec.slices));
    }
    if (table.labels[i] < 0) {
      throw Error(ErrorCode::kInvalidArgument, "labels must be >= 0");
    }
    queues[table.slices[i]].push_back(i);
    max_label = std::max(max_label, table.labels[i]);
    max_id = std::max(max_id, table.ids[i]);
  }
  std::mt19937_64 rng(internal::mix_seed(spec.seed, 1));
  for (auto& q : queues) std::shuffle(q.begin(), q.end(), rng);
  std::vector<std::size_t> cursor(spec.slices, 0);

  auto next = std::function<Draw(std::size_t)>([&](std::size_t s) {
    if (cursor[s] >= queues[s].size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "slice " + std::to_string(s) +
                      " has too few rows for the requested stream sizes");
    }
    const std::size_t row = queues[s][cursor[s]++];
    return Draw{table.rows[row], table.labels[row]};
  });
  // Table ids are not reused: redundancy copies need fresh ids anyway.
  return assemble(spec, static_cast<std::size_t>(max_label) + 1, max_id + 1,
                  next, next, next);
}

}  // namespace streamline::sim
