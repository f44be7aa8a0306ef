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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "streamline/kernel.h"
#include "streamline/maximize.h"
#include "streamline/submodular.h"

namespace streamline {
namespace {

std::vector<Embedding> units(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Embedding> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (double& x : v) x = g(rng);
    out.push_back(Embedding(std::move(v)).normalized());
  }
  return out;
}

void run(benchmark::State& state, Algorithm algorithm) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = units(n, 32, 1);
  const FacilityLocation f(build_kernel(x, x));
  MaximizerConfig cfg;
  cfg.algorithm = algorithm;
  cfg.budget = n / 10;
  if (algorithm == Algorithm::kStochastic) cfg.epsilon = 0.05;
  std::int64_t evals = 0;
  for (auto _ : state) {
    const auto trace = maximize(f, cfg);
    evals = trace.evaluations;
    benchmark::DoNotOptimize(trace.chosen.data());
  }
  state.counters["evaluations"] = static_cast<double>(evals);
}

void BM_NaiveGreedy(benchmark::State& s) { run(s, Algorithm::kNaive); }
void BM_LazyGreedy(benchmark::State& s) { run(s, Algorithm::kLazy); }
void BM_StochasticGreedy(benchmark::State& s) { run(s, Algorithm::kStochastic); }

BENCHMARK(BM_NaiveGreedy)->Arg(200)->Arg(800);
BENCHMARK(BM_LazyGreedy)->Arg(200)->Arg(800)->Arg(2000);
BENCHMARK(BM_StochasticGreedy)->Arg(200)->Arg(800)->Arg(2000);

void BM_FlcgLazy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = units(n, 32, 2), p = units(n / 2, 32, 3);
  const Flcg f(build_kernel(u, u), build_kernel(u, p));
  MaximizerConfig cfg;
  cfg.budget = n / 10;
  for (auto _ : state) benchmark::DoNotOptimize(lazy_greedy(f, cfg).chosen.data());
}
BENCHMARK(BM_FlcgLazy)->Arg(300)->Arg(1200);

}  // namespace
}  // namespace streamline

BENCHMARK_MAIN();
