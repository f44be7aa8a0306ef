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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "streamline/error.h"
#include "test_util.h"

namespace streamline::baselines {
namespace {

using Ids = std::vector<std::size_t>;

bool unique_in_range(const Ids& ids, std::size_t n) {
  std::set<std::size_t> s(ids.begin(), ids.end());
  return s.size() == ids.size() && (ids.empty() || *s.rbegin() < n);
}

TEST(Random, SizesAndDeterminism) {
  EXPECT_EQ(random_select(5, 9, 1), (Ids{0, 1, 2, 3, 4}));
  EXPECT_TRUE(random_select(5, 0, 1).empty());
  const auto a = random_select(100, 10, 77), b = random_select(100, 10, 77);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_TRUE(unique_in_range(a, 100));
  EXPECT_NE(a, random_select(100, 10, 78));
}

TEST(Random, RoughlyUniform) {
  std::vector<int> hits(10, 0);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    for (std::size_t k : random_select(10, 3, s)) ++hits[k];
  }
  for (int h : hits) EXPECT_NEAR(h, 600, 90);
}

// Definitional oracle for the three scores.
double oracle(const std::vector<double>& p, UncertaintyMode mode) {
  std::vector<double> s = p;
  std::sort(s.rbegin(), s.rend());
  switch (mode) {
    case UncertaintyMode::kEntropy: {
      double h = 0.0;
      for (double x : p) h -= x > 0.0 ? x * std::log(x) : 0.0;
      return h;
    }
    case UncertaintyMode::kLeastConfidence:
      return 1.0 - s[0];
    case UncertaintyMode::kMargin:
      return s[0] - (s.size() > 1 ? s[1] : 0.0);
  }
  return 0.0;
}

TEST(Uncertainty, UniformScores) {
  const auto r = PredictionRecord::classification({0.25, 0.25, 0.25, 0.25});
  EXPECT_NEAR(uncertainty_score(r, UncertaintyMode::kEntropy), std::log(4.0), 1e-12);
  EXPECT_NEAR(uncertainty_score(r, UncertaintyMode::kLeastConfidence), 0.75, 1e-12);
  EXPECT_NEAR(uncertainty_score(r, UncertaintyMode::kMargin), 0.0, 1e-12);
}

TEST(Uncertainty, OneHotScores) {
  const auto r = PredictionRecord::classification({0.0, 1.0, 0.0});
  EXPECT_EQ(uncertainty_score(r, UncertaintyMode::kEntropy), 0.0);
  EXPECT_EQ(uncertainty_score(r, UncertaintyMode::kLeastConfidence), 0.0);
  EXPECT_EQ(uncertainty_score(r, UncertaintyMode::kMargin), 1.0);
}

TEST(Uncertainty, DetectionAveragesBoxes) {
  const auto r = PredictionRecord::detection({{0.5, 0.5}, {1.0, 0.0}});
  EXPECT_NEAR(uncertainty_score(r, UncertaintyMode::kEntropy), 0.3466, 1e-4);
  EXPECT_THROW(PredictionRecord::detection({}), Error);
}

TEST(Uncertainty, RejectsNonSimplex) {
  EXPECT_THROW(PredictionRecord::classification({0.5, 0.6}), Error);
  EXPECT_THROW(PredictionRecord::classification({1.2, -0.2}), Error);
}

TEST(Uncertainty, MatchesOracleOnRandomSimplices) {
  std::mt19937_64 rng(2);
  std::gamma_distribution<double> g(0.7, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(2 + trial % 5);
    double total = 0.0;
    for (double& x : p) total += (x = g(rng));
    for (double& x : p) x /= total;
    const auto r = PredictionRecord::classification(p);
    for (auto m : {UncertaintyMode::kEntropy, UncertaintyMode::kLeastConfidence, UncertaintyMode::kMargin}) {
      EXPECT_NEAR(uncertainty_score(r, m), oracle(p, m), 1e-9);
    }
  }
}

TEST(Uncertainty, SelectionOrder) {
  std::vector<PredictionRecord> rs = {
      PredictionRecord::classification({0.9, 0.1}),
      PredictionRecord::classification({0.5, 0.5}),
      PredictionRecord::classification({0.7, 0.3}),
      PredictionRecord::classification({0.5, 0.5}),
  };
  EXPECT_EQ(uncertainty_select(rs, UncertaintyMode::kEntropy, 2), (Ids{1, 3}));
  EXPECT_EQ(uncertainty_select(rs, UncertaintyMode::kMargin, 3), (Ids{1, 3, 2}));
  EXPECT_EQ(uncertainty_select(rs, UncertaintyMode::kLeastConfidence, 9).size(), 4u);
  EXPECT_TRUE(uncertainty_select(rs, UncertaintyMode::kEntropy, 0).empty());
}

MaximizerConfig lazy() { return MaximizerConfig{}; }

TEST(SubmodularFl, DuplicatesCoveredBeforeRepeats) {
  const std::vector<Embedding> base = {Embedding({1.0, 0.0, 0.0}), Embedding({0.2, 1.0, 0.0}),
                                       Embedding({0.0, 0.3, 1.0})};
  std::vector<Embedding> xs;
  for (const auto& e : base) {
    xs.push_back(e);
    xs.push_back(e);
  }
  auto t = submodular_fl_select(xs, 3, lazy());
  std::set<std::size_t> pairs;
  for (std::size_t k : t.chosen) pairs.insert(k / 2);
  EXPECT_EQ(pairs.size(), 3u);
  for (double g : t.gains) EXPECT_GT(g, 0.0);

  // Brute-force optimum over 3-subsets also spans all pairs.
  std::vector<Embedding> unit;
  for (const auto& e : xs) unit.push_back(e.normalized());
  const auto k = build_kernel(unit, unit);
  double best = 0.0;
  for (const auto& s : testing::subsets_of_size(6, 3)) best = std::max(best, testing::fl_oracle(k, s));
  EXPECT_NEAR(testing::fl_oracle(k, t.chosen), best, 1e-9);
}

TEST(SubmodularFl, Trivial) {
  const std::vector<Embedding> one = {Embedding({0.3, 0.4})};
  EXPECT_TRUE(submodular_fl_select(one, 0, lazy()).chosen.empty());
  EXPECT_EQ(submodular_fl_select(one, 1, lazy()).chosen, Ids{0});
}

TEST(Similar, PicksOnSliceCluster) {
  std::mt19937_64 rng(3);
  std::vector<Embedding> xs;
  const std::vector<double> on = {5.0, 0.0, 0.0}, off = {0.0, 0.0, 5.0};
  for (int i = 0; i < 4; ++i) xs.push_back(testing::gaussian_point(on, 0.5, rng));
  for (int i = 0; i < 4; ++i) xs.push_back(testing::gaussian_point(off, 0.5, rng));
  std::vector<Embedding> query;
  for (int i = 0; i < 3; ++i) query.push_back(testing::gaussian_point(on, 0.5, rng));
  const auto t = similar_select(xs, query, 2, lazy());
  for (std::size_t k : t.chosen) EXPECT_LT(k, 4u);

  std::vector<Embedding> ux, uq;
  for (const auto& e : xs) ux.push_back(e.normalized());
  for (const auto& e : query) uq.push_back(e.normalized());
  const auto kq = build_kernel(ux, uq);
  double best = 0.0;
  Ids arg;
  for (const auto& s : testing::subsets_of_size(8, 2)) {
    const double v = testing::flqmi_oracle(kq, s);
    if (v > best) best = v, arg = s;
  }
  for (std::size_t k : arg) EXPECT_LT(k, 4u);
}

TEST(Similar, QueryEqualToItemPicksItFirst) {
  std::mt19937_64 rng(4);
  const auto xs = testing::random_units(6, 4, rng);
  const std::vector<Embedding> query = {xs[4]};
  EXPECT_EQ(similar_select(xs, query, 1, lazy()).chosen, Ids{4});
}

TEST(Similar, EdgeCases) {
  const std::vector<Embedding> xs = {Embedding({1.0, 0.0})};
  const std::vector<Embedding> none;
  EXPECT_TRUE(similar_select(xs, xs, 0, lazy()).chosen.empty());
  try {
    similar_select(xs, none, 1, lazy());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySlice);
  }
}

TEST(Badge, GradientEmbeddingSigns) {
  const std::vector<double> p = {0.2, 0.7, 0.1}, x = {1.0, -2.0};
  const auto g = gradient_embedding(p, x);
  ASSERT_EQ(g.size(), 6u);
  EXPECT_NEAR(g[2], (0.7 - 1.0) * 1.0, 1e-12);
  EXPECT_NEAR(g[3], (0.7 - 1.0) * -2.0, 1e-12);
  EXPECT_NEAR(g[0], 0.2, 1e-12);
  EXPECT_NEAR(g[5], 0.1 * -2.0, 1e-12);
}

TEST(Badge, NormGrowsWithUncertainty) {
  const std::vector<double> x = {0.5, 1.5, -1.0};
  auto norm = [&](std::vector<double> p) {
    double s = 0.0;
    for (double v : gradient_embedding(p, x)) s += v * v;
    return std::sqrt(s);
  };
  const double confident = norm({0.95, 0.03, 0.02});
  const double middling = norm({0.7, 0.2, 0.1});
  const double unsure = norm({0.4, 0.35, 0.25});
  EXPECT_LT(confident, middling);
  EXPECT_LT(middling, unsure);
}

TEST(Badge, FirstPickUniform) {
  const std::vector<std::vector<double>> pts(5, std::vector<double>{1.0, 2.0});
  std::vector<int> hits(5, 0);
  for (std::uint64_t s = 0; s < 1000; ++s) ++hits[kmeanspp_seed(pts, 1, s)[0]];
  for (int h : hits) EXPECT_NEAR(h, 200, 60);
}

TEST(Badge, SecondPickLandsInOtherCluster) {
  // Cluster A: 5 points near 0; cluster B: 5 points near 100. After a pick in
  // one cluster, D^2 mass on the other is > 99.99%.
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({0.01 * i, 0.0});
  for (int i = 0; i < 5; ++i) pts.push_back({100.0 + 0.01 * i, 0.0});
  int across = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto pick = kmeanspp_seed(pts, 2, s);
    across += (pick[0] < 5) != (pick[1] < 5);
  }
  EXPECT_GE(across, 495);
}

TEST(Badge, IdenticalPointsFallBackToUniform) {
  const std::vector<std::vector<double>> pts(6, std::vector<double>{0.3, 0.3});
  const auto pick = kmeanspp_seed(pts, 4, 9);
  EXPECT_EQ(pick.size(), 4u);
  EXPECT_TRUE(unique_in_range(pick, 6));
}

TEST(Badge, SelectReturnsUniqueIds) {
  std::mt19937_64 rng(5);
  std::vector<PredictionRecord> rs;
  std::vector<Embedding> fs;
  for (int i = 0; i < 30; ++i) {
    const double a = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    rs.push_back(PredictionRecord::classification({a, 1.0 - a}));
    fs.push_back(testing::random_unit(4, rng));
  }
  const auto pick = badge_select(rs, fs, 10, 3);
  EXPECT_EQ(pick.size(), 10u);
  EXPECT_TRUE(unique_in_range(pick, 30));
  EXPECT_EQ(pick, badge_select(rs, fs, 10, 3));
  EXPECT_EQ(badge_select(rs, fs, 40, 3).size(), 30u);
}

}  // namespace
}  // namespace streamline::baselines
