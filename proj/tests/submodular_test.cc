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

#include "streamline/submodular.h"

#include <random>

#include <gtest/gtest.h>

#include "streamline/error.h"
#include "test_util.h"

namespace streamline {
namespace {

using testing::all_subsets;
using testing::fl_oracle;
using testing::flcg_oracle;
using testing::flqmi_oracle;
using testing::random_kernel;
using Ids = std::vector<std::size_t>;

TEST(FacilityLocation, EmptySetIsZero) {
  const FacilityLocation f(SimilarityMatrix(2, 2, {1.0, 0.2, 0.2, 1.0}));
  EXPECT_EQ(f.value(Ids{}), 0.0);
}

TEST(FacilityLocation, HandSum) {
  const FacilityLocation f(SimilarityMatrix(2, 2, {1.0, 0.2, 0.2, 1.0}));
  EXPECT_NEAR(f.value(Ids{0}), 1.2, 1e-12);
}

TEST(FacilityLocation, FullGroundUnitDiagonal) {
  std::mt19937_64 rng(1);
  std::vector<double> e(25);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) e[i * 5 + j] = i == j ? 1.0 : u(rng);
  }
  const FacilityLocation f(SimilarityMatrix(5, 5, e));
  EXPECT_NEAR(f.value(Ids{0, 1, 2, 3, 4}), 5.0, 1e-12);
}

TEST(FacilityLocation, OutOfRange) {
  const FacilityLocation f(SimilarityMatrix(2, 2, {1.0, 0.2, 0.2, 1.0}));
  EXPECT_THROW(f.value(Ids{2}), Error);
}

TEST(FacilityLocation, DuplicatesIgnored) {
  const FacilityLocation f(SimilarityMatrix(2, 2, {1.0, 0.2, 0.2, 1.0}));
  EXPECT_EQ(f.value(Ids{0, 0}), f.value(Ids{0}));
}

TEST(Flqmi, EmptySetIsZero) {
  const Flqmi f(SimilarityMatrix(2, 2, {0.9, 0.1, 0.2, 0.8}));
  EXPECT_EQ(f.value(Ids{}), 0.0);
}

TEST(Flqmi, SingleEntryDoubles) {
  const Flqmi f(SimilarityMatrix(1, 1, {0.37}));
  EXPECT_NEAR(f.value(Ids{0}), 0.74, 1e-12);
}

TEST(Flqmi, HandEvaluation) {
  const Flqmi f(SimilarityMatrix(2, 2, {0.9, 0.1, 0.2, 0.8}));
  EXPECT_NEAR(f.value(Ids{0, 1}), 3.4, 1e-12);
}

TEST(Flcg, EmptyPrivateIsFacilityLocation) {
  std::mt19937_64 rng(2);
  const auto uu = random_kernel(5, 5, rng);
  const Flcg g(uu, SimilarityMatrix(5, 0, {}));
  const FacilityLocation f(uu);
  for (const auto& a : all_subsets(5)) EXPECT_NEAR(g.value(a), f.value(a), 1e-12);
}

TEST(Flcg, EmptySetIsZero) {
  const Flcg g(SimilarityMatrix(2, 2, {1.0, 0.5, 0.5, 1.0}), SimilarityMatrix(2, 1, {0.9, 0.1}));
  EXPECT_EQ(g.value(Ids{}), 0.0);
}

TEST(Flcg, HandEvaluation) {
  const Flcg g(SimilarityMatrix(2, 2, {1.0, 0.5, 0.5, 1.0}), SimilarityMatrix(2, 1, {0.9, 0.1}));
  EXPECT_NEAR(g.value(Ids{1}), 0.9, 1e-12);
}

TEST(Flcg, ShapeChecks) {
  EXPECT_THROW(Flcg(SimilarityMatrix(2, 3, std::vector<double>(6, 0.1)),
                    SimilarityMatrix(2, 1, {0.1, 0.1})),
               Error);
  EXPECT_THROW(Flcg(SimilarityMatrix(2, 2, std::vector<double>(4, 0.1)),
                    SimilarityMatrix(3, 1, {0.1, 0.1, 0.1})),
               Error);
}

TEST(AllKinds, ValuesMatchDefinitionalOracles) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto uu = random_kernel(6, 6, rng);
    const auto up = random_kernel(6, 3, rng);
    const FacilityLocation fl(uu);
    const Flqmi mi(up);
    const Flcg cg(uu, up);
    for (const auto& a : all_subsets(6)) {
      EXPECT_NEAR(fl.value(a), fl_oracle(uu, a), 1e-12);
      EXPECT_NEAR(mi.value(a), flqmi_oracle(up, a), 1e-12);
      EXPECT_NEAR(cg.value(a), flcg_oracle(uu, up, a), 1e-12);
    }
  }
}

struct Instances {
  std::vector<std::unique_ptr<SetFunction>> fns;
};

Instances random_instances(std::mt19937_64& rng, std::size_t n) {
  Instances out;
  out.fns.push_back(std::make_unique<FacilityLocation>(random_kernel(n, n, rng)));
  out.fns.push_back(std::make_unique<Flqmi>(random_kernel(n, 4, rng)));
  out.fns.push_back(std::make_unique<Flcg>(random_kernel(n, n, rng), random_kernel(n, 3, rng)));
  return out;
}

TEST(Properties, IncrementalGainMatchesTwoEvaluations) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_instances(rng, 6);
    for (const auto& f : inst.fns) {
      std::vector<std::size_t> order = {0, 1, 2, 3, 4, 5};
      std::shuffle(order.begin(), order.end(), rng);
      auto state = f->make_state();
      Ids a;
      for (std::size_t step = 0; step < 4; ++step) {
        for (std::size_t x = 0; x < 6; ++x) {
          if (std::find(a.begin(), a.end(), x) != a.end()) continue;
          Ids ax = a;
          ax.push_back(x);
          const double want = f->value(ax) - f->value(a);
          EXPECT_NEAR(state->gain(x), want, 1e-9);
          EXPECT_NEAR(marginal_gain(*f, a, x), want, 1e-9);
        }
        state->add(order[step]);
        a.push_back(order[step]);
      }
    }
  }
}

TEST(Properties, MonotoneAndSubmodular) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_instances(rng, 6);
    const auto subsets = all_subsets(6);
    for (const auto& f : inst.fns) {
      for (const auto& b : subsets) {
        for (std::size_t x = 0; x < 6; ++x) {
          if (std::find(b.begin(), b.end(), x) != b.end()) continue;
          const double gb = marginal_gain(*f, b, x);
          EXPECT_GE(gb, -1e-9);
          // A = B minus its last element, a subset of B.
          if (b.empty()) continue;
          const Ids a(b.begin(), b.end() - 1);
          EXPECT_GE(marginal_gain(*f, a, x), gb - 1e-9);
        }
      }
    }
  }
}

TEST(MarginalGain, EmptySetEqualsSingleton) {
  std::mt19937_64 rng(6);
  const FacilityLocation f(random_kernel(4, 4, rng));
  for (std::size_t x = 0; x < 4; ++x) {
    EXPECT_NEAR(marginal_gain(f, Ids{}, x), f.value(Ids{x}), 1e-12);
  }
}

TEST(MarginalGain, DuplicateColumnAddsNothing) {
  // Items 0 and 1 are identical (same column).
  const FacilityLocation f(SimilarityMatrix(3, 3, {1.0, 1.0, 0.2, 1.0, 1.0, 0.2, 0.2, 0.2, 1.0}));
  EXPECT_EQ(marginal_gain(f, Ids{0}, 1), 0.0);
}

TEST(MarginalGain, MemberRejected) {
  const FacilityLocation f(SimilarityMatrix(2, 2, {1.0, 0.2, 0.2, 1.0}));
  try {
    marginal_gain(f, Ids{0}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(Identities, SmiScgBoundaryCases) {
  std::mt19937_64 rng(7);
  const FacilityLocation f(random_kernel(5, 5, rng));
  const Ids a = {1, 3};
  EXPECT_NEAR(smi_value(f, a, Ids{}), 0.0, 1e-12);
  EXPECT_NEAR(scg_value(f, a, Ids{}), f.value(a), 1e-12);
  EXPECT_NEAR(smi_value(f, a, a), f.value(a), 1e-12);
}

TEST(Identities, SmiScgMatchDefinition) {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_kernel(5, 5, rng);
    const FacilityLocation f(s);
    Ids a, b, ab;
    for (std::size_t i = 0; i < 5; ++i) {
      const bool in_a = coin(rng), in_b = coin(rng);
      if (in_a) a.push_back(i);
      if (in_b) b.push_back(i);
      if (in_a || in_b) ab.push_back(i);
    }
    EXPECT_NEAR(smi_value(f, a, b), fl_oracle(s, a) + fl_oracle(s, b) - fl_oracle(s, ab), 1e-9);
    EXPECT_NEAR(scg_value(f, a, b), fl_oracle(s, ab) - fl_oracle(s, b), 1e-9);
  }
}

TEST(Identities, FlcgIsConditionalGainOnJoinedKernel) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto uu = random_kernel(5, 5, rng);
    const auto up = random_kernel(5, 3, rng);
    const Flcg cg(uu, up);
    const FacilityLocation joined(uu.hconcat(up));
    const Ids p = {5, 6, 7};
    for (const auto& a : all_subsets(5)) {
      Ids ap = a;
      ap.insert(ap.end(), p.begin(), p.end());
      EXPECT_NEAR(cg.value(a), joined.value(ap) - joined.value(p), 1e-9);
    }
  }
}

TEST(Restrict, SubsetOfGroundMatchesReindexedOracle) {
  std::mt19937_64 rng(10);
  const auto uu = random_kernel(6, 6, rng);
  const auto up = random_kernel(6, 2, rng);
  const Ids keep = {1, 4, 5};
  const auto fl = FacilityLocation(uu).restrict_to(keep);
  const auto cg = Flcg(uu, up).restrict_to(keep);
  const auto mi = Flqmi(up).restrict_to(keep);
  const auto uu_k = uu.submatrix(keep, keep);
  const auto up_k = up.submatrix(keep, Ids{0, 1});
  for (const auto& a : all_subsets(3)) {
    EXPECT_NEAR(fl->value(a), fl_oracle(uu_k, a), 1e-12);
    EXPECT_NEAR(cg->value(a), flcg_oracle(uu_k, up_k, a), 1e-12);
    EXPECT_NEAR(mi->value(a), flqmi_oracle(up_k, a), 1e-12);
  }
}

TEST(Normalizer, SumOfAxisLengths) {
  static_assert(flqmi_normalizer(10, 4) == 14.0);
  std::mt19937_64 rng(11);
  const auto k = random_kernel(7, 3, rng);
  EXPECT_EQ(flqmi_normalizer(k.rows(), k.cols()), 10.0);
}

}  // namespace
}  // namespace streamline
