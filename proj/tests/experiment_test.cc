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

#include <set>

#include <gtest/gtest.h>

#include "streamline/error.h"

namespace streamline::sim {
namespace {

StreamSpec tiny_spec() {
  StreamSpec s;
  s.dim = 8;
  s.common_initial_size = 30;
  s.rounds = 6;
  s.episode_size = 40;
  s.redundancy = 2;
  s.eval_per_slice = 20;
  return s;
}

ExperimentHyper tiny_hyper() {
  ExperimentHyper h;
  h.budget = 10;
  h.learner.epochs = 30;
  return h;
}

TEST(Methods, NamesRoundTrip) {
  EXPECT_EQ(all_methods().size(), 11u);
  for (Method m : all_methods()) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_FALSE(parse_method("nope").has_value());
  EXPECT_TRUE(is_streamline_variant(Method::kStreamlineNoBudget));
  EXPECT_FALSE(is_streamline_variant(Method::kBadge));
}

TEST(Experiment, RandomGrowsByBudgetEachRound) {
  const auto log = run_experiment(tiny_spec(), Method::kRandom, tiny_hyper());
  ASSERT_EQ(log.rounds.size(), 6u);
  std::size_t prev = log.initial_labels;
  for (const auto& r : log.rounds) {
    EXPECT_EQ(r.labels_total, prev + 10);
    EXPECT_EQ(r.granted_b, 10);
    EXPECT_EQ(r.gamma, 0.0);
    EXPECT_FALSE(r.identified_slice.has_value());
    prev = r.labels_total;
  }
}

TEST(Experiment, BaselinesAugmentTrueSlice) {
  const auto log = run_experiment(tiny_spec(), Method::kEntropy, tiny_hyper());
  std::vector<std::size_t> before = log.initial_pool_sizes;
  for (const auto& r : log.rounds) {
    std::vector<std::size_t> want = before;
    want[r.true_slice] += 10;
    EXPECT_EQ(r.pool_sizes, want);
    before = r.pool_sizes;
  }
}

TEST(Experiment, AllCommonStreamGammaNondecreasing) {
  auto s = tiny_spec();
  s.rare_slices = {};
  const auto log = run_experiment(s, Method::kStreamline, tiny_hyper());
  double prev = 0.0;
  for (const auto& r : log.rounds) {
    EXPECT_GE(r.gamma, prev);
    prev = r.gamma;
  }
}

TEST(Experiment, ConservationForEveryMethod) {
  for (Method m : all_methods()) {
    const auto log = run_experiment(tiny_spec(), m, tiny_hyper());
    ASSERT_EQ(log.rounds.size(), 6u) << method_name(m);
    EXPECT_EQ(static_cast<std::int64_t>(log.rounds.back().labels_total - log.initial_labels),
              log.labels_spent())
        << method_name(m);
    EXPECT_LE(log.labels_spent(), 6 * 10) << method_name(m);
    std::set<ItemId> seen;
    for (const auto& r : log.rounds) {
      EXPECT_EQ(static_cast<std::int64_t>(r.selected.size()), r.granted_b);
      for (ItemId id : r.selected) EXPECT_TRUE(seen.insert(id).second);
      EXPECT_EQ(r.identified_slice.has_value(), is_streamline_variant(m));
      EXPECT_GE(r.rare_metric, 0.0);
      EXPECT_LE(r.full_metric, 1.0);
    }
  }
}

TEST(Experiment, NoBudgetVariantSpendsBase) {
  const auto log = run_experiment(tiny_spec(), Method::kStreamlineNoBudget, tiny_hyper());
  for (const auto& r : log.rounds) {
    EXPECT_EQ(r.granted_b, 10);
    EXPECT_EQ(r.gamma, 0.0);
  }
}

TEST(Experiment, StreamlineIdentifiesWellSeparatedSlices) {
  const auto log = run_experiment(tiny_spec(), Method::kStreamline, tiny_hyper());
  for (const auto& r : log.rounds) EXPECT_EQ(r.identified_slice, r.true_slice);
}

TEST(Experiment, Deterministic) {
  for (Method m : {Method::kStreamline, Method::kBadge, Method::kStreamlineNoScg}) {
    const auto a = run_experiment(tiny_spec(), m, tiny_hyper());
    const auto b = run_experiment(tiny_spec(), m, tiny_hyper());
    for (std::size_t r = 0; r < a.rounds.size(); ++r) {
      EXPECT_EQ(a.rounds[r].selected, b.rounds[r].selected);
      EXPECT_EQ(a.rounds[r].full_metric, b.rounds[r].full_metric);
    }
  }
}

TEST(Experiment, SimilarNeedsRareQuery) {
  auto s = tiny_spec();
  s.rare_slices = {};
  try {
    run_experiment(s, Method::kSimilar, tiny_hyper());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySlice);
  }
}

TEST(Experiment, SimilarGradientFeatures) {
  auto h = tiny_hyper();
  h.similar_gradient_features = true;
  const auto log = run_experiment(tiny_spec(), Method::kSimilar, h);
  EXPECT_EQ(log.labels_spent(), 60);
}

TEST(Experiment, StochasticMaximizer) {
  auto h = tiny_hyper();
  h.maximizer.algorithm = Algorithm::kStochastic;
  h.maximizer.epsilon = 0.1;
  h.maximizer.partitions = 2;
  const auto log = run_experiment(tiny_spec(), Method::kStreamline, h);
  EXPECT_EQ(log.rounds.size(), 6u);
}

TEST(Experiment, HyperValidation) {
  auto h = tiny_hyper();
  h.rho = -0.1;
  EXPECT_THROW(run_experiment(tiny_spec(), Method::kRandom, h), Error);
  h = tiny_hyper();
  h.budget = 0;
  EXPECT_THROW(run_experiment(tiny_spec(), Method::kRandom, h), Error);
}

}  // namespace
}  // namespace streamline::sim
