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

#ifndef NGDB_EVALUATOR_EVALUATOR_HPP_
#define NGDB_EVALUATOR_EVALUATOR_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ngdb/benchgen/benchmark.hpp"
#include "ngdb/encoders/encoder.hpp"
#include "ngdb/kg/vocabulary.hpp"
#include "ngdb/query/query_type.hpp"
#include "ngdb/trainer/noise.hpp"

namespace ngdb {

// Filtered rank of `target` among `scores` (indexed by vertex id):
// 1 + |{u not in filter_out, u != target : scores[u] >= scores[target]}|.
// Ties count against the target. Throws NotFound if the target has no score
// and InvalidArgument if it is in `filter_out` or its score is NaN.
std::size_t Rank(std::span<const double> scores, VertexId target,
                 std::span<const VertexId> filter_out);

struct Metrics {
  double hr1 = 0.0;
  double hr3 = 0.0;
  double hr10 = 0.0;
  double mrr = 0.0;
  std::size_t count = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// HR@K is the fraction of ranks <= K, MRR the mean of 1/rank. Throws
// InvalidArgument for an empty list or a zero rank.
Metrics ComputeMetrics(std::span<const std::size_t> ranks);

// Expected MRR of a uniformly random ranking over n candidates: H_n / n.
double UniformMrr(std::size_t n);

enum class AnswerClass { kPublic, kPrivate };
inline constexpr std::array<AnswerClass, 2> kAnswerClasses = {
    AnswerClass::kPublic, AnswerClass::kPrivate};

std::string_view ClassName(AnswerClass c);  // "public", "private"
std::optional<AnswerClass> ParseClass(std::string_view name);

struct RankRecord {
  std::size_t query_index = 0;  // position in the evaluated benchmark
  QueryType type = QueryType::kOther;
  AnswerClass answer_class = AnswerClass::kPublic;
  VertexId target{};
  std::size_t rank = 0;

  friend bool operator==(const RankRecord&, const RankRecord&) = default;
};

// Metrics per (type, class) and pooled over all targets of a class. A cell
// without targets has count 0 and zero metrics.
struct EvalReport {
  std::array<std::array<Metrics, 2>, kBenchmarkTypes.size()> per_type{};
  std::array<Metrics, 2> all{};
  std::vector<RankRecord> ranks;

  const Metrics& Cell(QueryType type, AnswerClass c) const;
  const Metrics& All(AnswerClass c) const {
    return all[static_cast<std::size_t>(c)];
  }

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Aggregates rank records into a report. Records of type kOther are kept in
// `ranks` but contribute only to the pooled metrics.
EvalReport ReportFromRanks(std::vector<RankRecord> ranks);

struct Protection {
  enum class Kind { kNone, kNoise };
  Kind kind = Kind::kNone;
  NoiseConfig noise;  // used with kNoise; query i draws with key i
};

std::string_view ProtectionName(Protection::Kind kind);  // "none", "noise"
std::optional<Protection::Kind> ParseProtection(std::string_view name);

// Ranks every evaluation target of every test query. Public targets are
// test-public answers missing from the valid answers; private targets are
// the test-private answers. Each target is filtered against every other
// known answer of its query, public or private.
//
// Throws InvalidArgument when the model's tables do not match `vocab` or a
// query references ids outside it.
EvalReport EvaluateModel(const Encoder& encoder, const Vocabulary& vocab,
                         std::span<const BenchmarkQuery> test_queries,
                         const Protection& protection = {});

// Two-row-per-report summary: public and private HR@3 and MRR in percent.
//   label  public_HR@3  public_MRR  private_HR@3  private_MRR
void WriteSummaryTsv(
    std::ostream& out,
    std::span<const std::pair<std::string, EvalReport>> rows);

// Per-type table of one report, in percent. With a baseline, each cell is
// followed by the ratio to the baseline cell, e.g. "12.34 (56.7%)".
//   class  metric  1p 2p 2i 3i pi ip 2u up All
void WritePerTypeTsv(std::ostream& out, const EvalReport& report,
                     const EvalReport* baseline = nullptr);

// Rank records as TSV: query_index type class target_id rank.
void WriteRanksTsv(std::ostream& out, const EvalReport& report);

// Lossless JSON form (metrics and rank records).
void WriteReportJson(std::ostream& out, const EvalReport& report);
EvalReport ReadReportJson(std::istream& in);

struct CalibrationResult {
  double sigma = 0.0;
  Metrics public_metrics;
  Metrics private_metrics;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Finds a noise scale whose public MRR lies within `tolerance` (relative) of
// `target_public_mrr`, by bracketing and bisection on sigma. Public MRR is
// not strictly monotone in sigma under a fixed draw; the search stops at the
// first sigma inside the band. If the band is not reached within
// `max_evaluations`, returns the closest sigma seen with converged = false.
CalibrationResult CalibrateSigma(const Encoder& encoder,
                                 const Vocabulary& vocab,
                                 std::span<const BenchmarkQuery> test_queries,
                                 double target_public_mrr, std::uint64_t seed,
                                 double tolerance = 0.05,
                                 std::size_t max_evaluations = 40);

}  // namespace ngdb

#endif  // NGDB_EVALUATOR_EVALUATOR_HPP_
