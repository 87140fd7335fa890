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

#ifndef NGDB_BENCHGEN_BENCHMARK_HPP_
#define NGDB_BENCHGEN_BENCHMARK_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ngdb/kg/graph.hpp"
#include "ngdb/query/query.hpp"
#include "ngdb/query/query_type.hpp"
#include "ngdb/symbolic/evaluate.hpp"

namespace ngdb {

enum class Split { kTrain, kValid, kTest };

std::string_view SplitName(Split split);  // "train", "valid", "test"
std::optional<Split> ParseSplit(std::string_view name);
inline constexpr std::array<Split, 3> kSplits = {Split::kTrain, Split::kValid,
                                                 Split::kTest};

// Uniform sample of `n` attribute triples of `g`, sorted. Throws
// InvalidArgument if g has fewer than n attribute triples.
std::vector<Triple> SamplePrivateEdges(const KnowledgeGraph& g, std::size_t n,
                                       std::uint64_t seed);

// Partitions the non-private triples of `g` 8:1:1 after a seeded shuffle.
// Bucket sizes use cumulative rounding: train = round(0.8 n), valid =
// round(0.9 n) - train, test = the rest. The valid graph contains train and
// valid edges, the test graph contains all three buckets plus the private
// edges, flagged private. All graphs share g's vocabulary.
GraphSplit SplitEdges(const KnowledgeGraph& g,
                      std::span<const Triple> private_triples,
                      std::uint64_t seed);

// Edges new to each bucket, i.e. valid \ train and test-public \ valid.
std::vector<Triple> BucketEdges(const GraphSplit& split, Split bucket);

// On-disk split: vertices.tsv, relations.tsv, train.tsv, valid.tsv and
// test.tsv (bucket edges only), private.tsv.
void SaveSplit(const std::filesystem::path& dir, const GraphSplit& split);
GraphSplit LoadSplit(const std::filesystem::path& dir);

struct BenchmarkQuery {
  Query query;
  QueryType type = QueryType::kOther;
  AnswerSet train_answers;
  AnswerSet valid_answers;
  TaggedAnswerSet test_answers;
};

struct SamplerOptions {
  TaggingMode mode = TaggingMode::kRelaxed;
  std::size_t retry_budget = 100;  // attempts per emitted query
};

// Samples `n` distinct queries of template `type` for `role`.
//
// Each attempt picks an answer vertex uniformly and grows the template
// backward from it by random walks over the role's graph (train, valid, or
// test including private edges), so the query is non-empty there. Answers
// on all three graphs are then computed symbolically; test answers are
// tagged with options.mode. Valid queries are kept only if they have an
// answer absent from the train graph, test queries only if they have one
// absent from the valid graph.
//
// Throws InvalidArgument for kOther and ExhaustedError when one query needs
// more than retry_budget attempts.
std::vector<BenchmarkQuery> SampleQueries(const GraphSplit& split, Split role,
                                          QueryType type, std::size_t n,
                                          std::uint64_t seed,
                                          const SamplerOptions& options = {});

// Answers belonging to a query in `role`: train and valid answers count as
// public, test answers keep their tags.
TaggedAnswerSet RoleAnswers(const BenchmarkQuery& q, Split role);

struct TypeStats {
  std::size_t queries = 0;
  std::size_t public_answers = 0;
  std::size_t private_answers = 0;

  friend bool operator==(const TypeStats&, const TypeStats&) = default;
};

struct BenchmarkStats {
  std::array<TypeStats, kBenchmarkTypes.size()> per_type{};
  TypeStats all;

  friend bool operator==(const BenchmarkStats&,
                         const BenchmarkStats&) = default;
};

// Queries of type kOther are ignored.
BenchmarkStats Stats(std::span<const BenchmarkQuery> queries, Split role);

// Rows "queries", "public", "private" for each split present, columns the
// eight types then All:
//   split  count  1p 2p 2i 3i pi ip 2u up All
void WriteStats(std::ostream& out,
                std::span<const std::pair<Split, BenchmarkStats>> rows);

// One query per line:
//   QUERY<TAB>TRAIN<TAB>VALID<TAB>TEST_PUBLIC<TAB>TEST_PRIVATE
// with comma-separated vertex names in id order. Throws InvalidArgument for
// a vertex name containing ',' or a tab.
void WriteBenchmark(std::ostream& out, std::span<const BenchmarkQuery> queries,
                    const Vocabulary& vocab);
std::vector<BenchmarkQuery> ReadBenchmark(std::istream& in,
                                          const Vocabulary& vocab);
std::vector<BenchmarkQuery> LoadBenchmark(const std::filesystem::path& path,
                                          const Vocabulary& vocab);

// File name for a (split, type) query file, e.g. "test_2i.tsv".
std::string BenchmarkFileName(Split split, QueryType type);

}  // namespace ngdb

#endif  // NGDB_BENCHGEN_BENCHMARK_HPP_
