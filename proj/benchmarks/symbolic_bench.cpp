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

#include "ngdb/benchgen/benchmark.hpp"
#include "ngdb/benchgen/graphs.hpp"
#include "ngdb/query/query_type.hpp"
#include "ngdb/symbolic/evaluate.hpp"

namespace ngdb {
namespace {

struct Fixture {
  KnowledgeGraph graph = SyntheticGraph({}, 11);
  GraphSplit split = SplitEdges(graph, SamplePrivateEdges(graph, 100, 12), 13);
};

const Fixture& Shared() {
  static const Fixture* f = new Fixture;
  return *f;
}

void BM_Evaluate(benchmark::State& state) {
  const Fixture& f = Shared();
  const auto type = kBenchmarkTypes[state.range(0)];
  const auto queries = SampleQueries(f.split, Split::kTest, type, 64, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Evaluate(f.split.test, queries[i++ % queries.size()].query));
  }
  state.SetLabel(std::string(TypeName(type)));
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 7);

void BM_EvaluateTagged(benchmark::State& state) {
  const Fixture& f = Shared();
  const auto queries =
      SampleQueries(f.split, Split::kTest, QueryType::kIp, 64, 2);
  const auto mode = state.range(0) ? TaggingMode::kStrict : TaggingMode::kRelaxed;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EvaluateTagged(f.split.test, queries[i++ % queries.size()].query, mode));
  }
  state.SetLabel(std::string(ModeName(mode)));
}
BENCHMARK(BM_EvaluateTagged)->Arg(0)->Arg(1);

void BM_SampleQueries(benchmark::State& state) {
  const Fixture& f = Shared();
  const auto type = kBenchmarkTypes[state.range(0)];
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SampleQueries(f.split, Split::kTest, type, 16, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 16);
  state.SetLabel(std::string(TypeName(type)));
}
BENCHMARK(BM_SampleQueries)->DenseRange(0, 7);

}  // namespace
}  // namespace ngdb
