//
// Copyright 2026 The ngdb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <vector>

#include <benchmark/benchmark.h>

#include "ngdb/common/rng.hpp"
#include "ngdb/evaluator/evaluator.hpp"

namespace ngdb {
namespace {

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> scores(n);
  for (double& s : scores) s = rng.Normal();
  std::vector<VertexId> filter;
  for (std::size_t i = 1; i < n; i += 10) filter.push_back(MakeVertexId(i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Rank(scores, MakeVertexId(0), filter));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Rank)->RangeMultiplier(8)->Range(64, 1 << 15);

void BM_ComputeMetrics(benchmark::State& state) {
  Rng rng(2);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(state.range(0)));
  for (auto& r : ranks) r = 1 + rng.UniformIndex(1000);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeMetrics(ranks));
}
BENCHMARK(BM_ComputeMetrics)->Arg(1 << 14);

}  // namespace
}  // namespace ngdb
