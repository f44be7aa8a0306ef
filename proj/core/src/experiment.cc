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

#include "streamline/experiment.h"

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <variant>

#include "seed_mix.h"
#include "streamline/baselines.h"
#include "streamline/error.h"

namespace streamline::sim {
namespace {

using baselines::PredictionRecord;
using baselines::UncertaintyMode;

constexpr std::array<std::pair<Method, std::string_view>, 11> kNames = {{
    {Method::kStreamline, "streamline"},
    {Method::kRandom, "random"},
    {Method::kEntropy, "entropy"},
    {Method::kMargin, "margin"},
    {Method::kLeastConf, "least_conf"},
    {Method::kSubmodular, "submodular"},
    {Method::kSimilar, "similar"},
    {Method::kBadge, "badge"},
    {Method::kStreamlineNoScg, "streamline_no_scg"},
    {Method::kStreamlineReplScg, "streamline_repl_scg"},
    {Method::kStreamlineNoBudget, "streamline_no_budget"},
}};

const Embedding& as_embedding(const KernelItem& item) {
  const auto* e = std::get_if<Embedding>(&item);
  if (e == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "experiments run on flat embeddings only");
  }
  return *e;
}

std::vector<Embedding> buffer_features(const UnlabeledBuffer& u) {
  std::vector<Embedding> out;
  out.reserve(u.items.size());
  for (const auto& item : u.items) out.push_back(as_embedding(item.payload));
  return out;
}

std::vector<PredictionRecord> predict_all(const Learner& learner,
                                          std::span<const Embedding> xs) {
  std::vector<PredictionRecord> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    out.push_back(PredictionRecord::classification(learner.predict_proba(x)));
  }
  return out;
}

std::vector<Embedding> gradient_features(const Learner& learner,
                                         std::span<const Embedding> xs) {
  std::vector<Embedding> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    out.emplace_back(
        baselines::gradient_embedding(learner.predict_proba(x), x.values()));
  }
  return out;
}

std::vector<std::size_t> baseline_positions(Method method,
                                            const UnlabeledBuffer& u,
                                            const SlicedLabeledPool& pool,
                                            const Learner& learner,
                                            const ExperimentHyper& hyper,
                                            std::size_t b,
                                            std::uint64_t round_seed) {
  const auto xs = buffer_features(u);
  MaximizerConfig cfg = hyper.maximizer;
  cfg.seed = round_seed;
  switch (method) {
    case Method::kRandom:
      return baselines::random_select(xs.size(), b, round_seed);
    case Method::kEntropy:
      return baselines::uncertainty_select(predict_all(learner, xs),
                                           UncertaintyMode::kEntropy, b);
    case Method::kMargin:
      return baselines::uncertainty_select(predict_all(learner, xs),
                                           UncertaintyMode::kMargin, b);
    case Method::kLeastConf:
      return baselines::uncertainty_select(predict_all(learner, xs),
                                           UncertaintyMode::kLeastConfidence, b);
    case Method::kSubmodular:
      return baselines::submodular_fl_select(xs, b, cfg).chosen;
    case Method::kBadge:
      return baselines::badge_select(predict_all(learner, xs), xs, b, round_seed);
    case Method::kSimilar: {
      std::vector<Embedding> query;
      for (std::size_t t = 0; t < pool.slice_count(); ++t) {
        if (!pool.is_rare(t)) continue;
        for (const auto& item : pool.slice(t).items) {
          query.push_back(as_embedding(item.payload));
        }
      }
      if (hyper.similar_gradient_features) {
        return baselines::similar_select(gradient_features(learner, xs),
                                         gradient_features(learner, query), b,
                                         cfg)
            .chosen;
      }
      return baselines::similar_select(xs, query, b, cfg).chosen;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument, "not a baseline method");
  }
}

double rare_metric(const EvalResult& r, const std::vector<bool>& rare) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < rare.size() && s < r.per_slice.size(); ++s) {
    if (!rare[s]) continue;
    total += r.per_slice[s];
    ++count;
  }
  return count == 0 ? r.full : total / static_cast<double>(count);
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, n] : kNames) {
    if (n == name) return method;
  }
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return methods;
}

bool is_streamline_variant(Method m) {
  return m == Method::kStreamline || m == Method::kStreamlineNoScg ||
         m == Method::kStreamlineReplScg || m == Method::kStreamlineNoBudget;
}

void ExperimentHyper::validate() const {
  if (budget < 1) throw Error(ErrorCode::kConfig, "budget: must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw Error(ErrorCode::kConfig, "rho: must lie in [0, 1]");
  }
  MaximizerConfig probe = maximizer;
  probe.budget = 1;
  try {
    probe.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, std::string("maximizer: ") + e.what());
  }
  learner.validate();
}

MetricsLog run_experiment(const EpisodeStream& stream, Method method,
                          const ExperimentHyper& hyper, std::uint64_t seed) {
  hyper.validate();
  SlicedLabeledPool pool = stream.initial_pool;
  BudgetState budget{hyper.budget, hyper.rho, 0.0};
  const LabelOracle oracle = [&stream](ItemId id) { return stream.label_of(id); };

  auto train = [&](std::size_t stage) {
    LearnerHyper lh = hyper.learner;
    lh.seed = internal::mix_seed(seed, 1000 + stage);
    return train_learner(pool, stream.classes, lh);
  };

  MetricsLog log;
  log.method = std::string(method_name(method));
  log.seed = seed;
  Learner learner = train(0);
  {
    const EvalResult r = evaluate(learner, stream.eval);
    log.initial_labels = pool.total_size();
    log.initial_full = r.full;
    log.initial_rare = rare_metric(r, stream.rare);
    log.initial_pool_sizes = pool.sizes();
  }

  for (std::size_t round = 0; round < stream.episodes.size(); ++round) {
    const UnlabeledBuffer& u = stream.episodes[round];
    if (!u.true_slice) {
      throw Error(ErrorCode::kInvalidArgument, "episode without a true slice");
    }
    const std::uint64_t round_seed = internal::mix_seed(seed, round);
    RoundMetrics row;
    row.round = round;
    row.true_slice = *u.true_slice;

    if (is_streamline_variant(method)) {
      StreamlineConfig cfg;
      cfg.maximizer = hyper.maximizer;
      cfg.maximizer.seed = round_seed;
      cfg.rarity = hyper.rarity;
      cfg.slice_aware = method != Method::kStreamlineNoBudget;
      if (method == Method::kStreamlineNoScg) {
        cfg.selection_override = [round_seed](const SlicedLabeledPool&,
                                              const UnlabeledBuffer& buf,
                                              std::size_t, std::size_t b) {
          std::vector<ItemId> ids;
          for (std::size_t k :
               baselines::random_select(buf.items.size(), b, round_seed)) {
            ids.push_back(buf.items[k].id);
          }
          return ids;
        };
      } else if (method == Method::kStreamlineReplScg) {
        cfg.selection_override = [&learner, round_seed](
                                     const SlicedLabeledPool&,
                                     const UnlabeledBuffer& buf, std::size_t,
                                     std::size_t b) {
          const auto xs = buffer_features(buf);
          std::vector<ItemId> ids;
          for (std::size_t k : baselines::badge_select(predict_all(learner, xs),
                                                       xs, b, round_seed)) {
            ids.push_back(buf.items[k].id);
          }
          return ids;
        };
      }
      const RoundReport report = streamline_round(pool, u, budget, cfg, oracle);
      row.identified_slice = report.identified_slice();
      row.granted_b = static_cast<std::int64_t>(report.selected.size());
      row.gamma = budget.gamma;
      row.selected = report.selected;
    } else {
      const std::size_t b =
          std::min(static_cast<std::size_t>(hyper.budget), u.items.size());
      const auto picks =
          baseline_positions(method, u, pool, learner, hyper, b, round_seed);
      std::vector<LabeledItem> labeled;
      for (std::size_t k : picks) {
        const UnlabeledItem& item = u.items.at(k);
        labeled.push_back({item.id, oracle(item.id), item.payload});
        row.selected.push_back(item.id);
      }
      pool.augment(*u.true_slice, std::move(labeled));
      row.granted_b = static_cast<std::int64_t>(row.selected.size());
    }

    learner = train(round + 1);
    const EvalResult r = evaluate(learner, stream.eval);
    row.labels_total = pool.total_size();
    row.full_metric = r.full;
    row.rare_metric = rare_metric(r, stream.rare);
    row.slice_metrics = r.per_slice;
    row.pool_sizes = pool.sizes();
    log.rounds.push_back(std::move(row));
  }
  return log;
}

MetricsLog run_experiment(const StreamSpec& spec, Method method,
                          const ExperimentHyper& hyper) {
  return run_experiment(generate_stream(spec), method, hyper, spec.seed);
}

}  // namespace streamline::sim
