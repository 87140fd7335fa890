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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ngdb/benchgen/graphs.hpp"
#include "ngdb/common/error.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/evaluator/evaluator.hpp"
#include "ngdb/query/parser.hpp"
#include "ngdb/symbolic/evaluate.hpp"
#include "ngdb/trainer/trainer.hpp"
#include "test_support.hpp"

namespace ngdb {
namespace {

using ::testing::HasSubstr;

std::vector<VertexId> Ids(std::initializer_list<std::size_t> ids) {
  std::vector<VertexId> out;
  for (std::size_t i : ids) out.push_back(MakeVertexId(i));
  return out;
}

// Position of the target after sorting the unfiltered candidates by score,
// descending, with the target placed after every tie.
std::size_t SortRank(const std::vector<double>& scores, std::size_t target,
                     const std::vector<bool>& filtered) {
  std::vector<std::pair<double, int>> order;  // (score, 0 = other, 1 = target)
  for (std::size_t u = 0; u < scores.size(); ++u) {
    if (u == target) {
      order.emplace_back(scores[u], 1);
    } else if (!filtered[u]) {
      order.emplace_back(scores[u], 0);
    }
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].second == 1) return i + 1;
  }
  return 0;
}

TEST(RankTest, TiesCountAgainstTheTarget) {
  const std::vector<double> s = {0.1, 0.5, 0.3, 0.5};
  EXPECT_EQ(Rank(s, MakeVertexId(1), {}), 2u);
  EXPECT_EQ(Rank(s, MakeVertexId(1), Ids({3})), 1u);
  EXPECT_EQ(Rank(s, MakeVertexId(2), {}), 3u);
  EXPECT_EQ(Rank(s, MakeVertexId(2), Ids({1})), 2u);
  EXPECT_EQ(Rank(s, MakeVertexId(0), {}), 4u);
}

TEST(RankTest, Errors) {
  const std::vector<double> s = {0.1, std::nan(""), 0.3};
  EXPECT_THROW(Rank(s, MakeVertexId(3), {}), NotFound);
  EXPECT_THROW(Rank(s, MakeVertexId(1), {}), InvalidArgument);
  EXPECT_THROW(Rank(s, MakeVertexId(0), Ids({0})), InvalidArgument);
}

TEST(RankTest, MatchesSortOracleOnRandomInputs) {
  Rng rng(17);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng.UniformIndex(40);
    std::vector<double> s(n);
    for (double& x : s) x = static_cast<double>(rng.UniformIndex(8));
    const std::size_t target = rng.UniformIndex(n);
    std::vector<bool> filtered(n, false);
    std::vector<VertexId> filter;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != target && rng.Bernoulli(0.3)) {
        filtered[u] = true;
        filter.push_back(MakeVertexId(u));
      }
    }
    ASSERT_EQ(Rank(s, MakeVertexId(target), filter),
              SortRank(s, target, filtered))
        << "trial " << trial;
  }
}

TEST(RankTest, FilteringNeverWorsensRank) {
  Rng rng(18);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> s(30);
    for (double& x : s) x = rng.Normal();
    std::vector<VertexId> filter;
    std::size_t previous = Rank(s, MakeVertexId(0), filter);
    for (std::size_t u = 1; u < s.size(); ++u) {
      if (!rng.Bernoulli(0.5)) continue;
      filter.push_back(MakeVertexId(u));
      const std::size_t r = Rank(s, MakeVertexId(0), filter);
      ASSERT_LE(r, previous);
      previous = r;
    }
  }
}

TEST(MetricsTest, WorkedExample) {
  const std::vector<std::size_t> ranks = {1, 2, 4, 20};
  const Metrics m = ComputeMetrics(ranks);
  EXPECT_DOUBLE_EQ(m.hr1, 0.25);
  EXPECT_DOUBLE_EQ(m.hr3, 0.5);
  EXPECT_DOUBLE_EQ(m.hr10, 0.75);
  EXPECT_DOUBLE_EQ(m.mrr, (1.0 + 0.5 + 0.25 + 0.05) / 4.0);
  EXPECT_EQ(m.count, 4u);
  EXPECT_THROW(ComputeMetrics(std::vector<std::size_t>{}), InvalidArgument);
  EXPECT_THROW(ComputeMetrics(std::vector<std::size_t>{1, 0}), InvalidArgument);
}

TEST(MetricsTest, UniformMrrMatchesRandomRankings) {
  EXPECT_DOUBLE_EQ(UniformMrr(1), 1.0);
  EXPECT_DOUBLE_EQ(UniformMrr(2), 0.75);
  EXPECT_THROW(UniformMrr(0), InvalidArgument);
  Rng rng(19);
  const std::size_t n = 50;
  std::vector<std::size_t> ranks;
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<double> s(n);
    for (double& x : s) x = rng.Uniform();
    ranks.push_back(Rank(s, MakeVertexId(0), {}));
  }
  EXPECT_NEAR(ComputeMetrics(ranks).mrr, UniformMrr(n), 0.005);
}

TEST(ReportTest, CellsArePerTypeAndAllIsPooled) {
  const std::vector<RankRecord> records = {
      {0, QueryType::k1p, AnswerClass::kPublic, MakeVertexId(1), 1},
      {0, QueryType::k1p, AnswerClass::kPrivate, MakeVertexId(2), 4},
      {1, QueryType::k2i, AnswerClass::kPublic, MakeVertexId(3), 2},
      {1, QueryType::k2i, AnswerClass::kPublic, MakeVertexId(4), 5},
      {2, QueryType::kOther, AnswerClass::kPublic, MakeVertexId(5), 10},
  };
  const EvalReport r = ReportFromRanks(records);
  EXPECT_EQ(r.Cell(QueryType::k1p, AnswerClass::kPublic).count, 1u);
  EXPECT_DOUBLE_EQ(r.Cell(QueryType::k2i, AnswerClass::kPublic).mrr, 0.35);
  EXPECT_EQ(r.Cell(QueryType::kUp, AnswerClass::kPublic), Metrics{});
  EXPECT_EQ(r.All(AnswerClass::kPublic).count, 4u);
  EXPECT_DOUBLE_EQ(r.All(AnswerClass::kPublic).mrr,
                   (1.0 + 0.5 + 0.2 + 0.1) / 4.0);
  EXPECT_DOUBLE_EQ(r.All(AnswerClass::kPrivate).hr3, 0.0);
  EXPECT_THROW(r.Cell(QueryType::kOther, AnswerClass::kPublic),
               InvalidArgument);
  EXPECT_EQ(r.ranks, records);
}

TEST(ReportTest, JsonRoundTripIsLossless) {
  Rng rng(20);
  std::vector<RankRecord> records;
  for (std::size_t i = 0; i < 200; ++i) {
    records.push_back({i, kBenchmarkTypes[rng.UniformIndex(8)],
                       kAnswerClasses[rng.UniformIndex(2)],
                       MakeVertexId(rng.UniformIndex(100)),
                       1 + rng.UniformIndex(300)});
  }
  const EvalReport r = ReportFromRanks(records);
  std::stringstream buffer;
  WriteReportJson(buffer, r);
  EXPECT_EQ(ReadReportJson(buffer), r);
  std::istringstream wrong(R"({"format": "something-else"})");
  EXPECT_THROW(ReadReportJson(wrong), InvalidArgument);
  std::istringstream broken("{");
  EXPECT_THROW(ReadReportJson(broken), ParseError);
}

TEST(ReportTest, TablesFormatPercentages) {
  const std::vector<RankRecord> records = {
      {0, QueryType::k1p, AnswerClass::kPublic, MakeVertexId(1), 1},
      {1, QueryType::k1p, AnswerClass::kPublic, MakeVertexId(1), 4}};
  const EvalReport r = ReportFromRanks(records);
  std::ostringstream summary;
  const std::pair<std::string, EvalReport> rows[] = {{"beta=0", r}};
  WriteSummaryTsv(summary, rows);
  EXPECT_EQ(summary.str(),
            "label\tpublic_HR@3\tpublic_MRR\tprivate_HR@3\tprivate_MRR\n"
            "beta=0\t50.00\t62.50\t-\t-\n");
  std::ostringstream per_type;
  WritePerTypeTsv(per_type, r, &r);
  EXPECT_THAT(per_type.str(),
              HasSubstr("class\tmetric\t1p\t2p\t2i\t3i\tpi\tip\t2u\tup\tAll\n"));
  EXPECT_THAT(per_type.str(), HasSubstr("public\tMRR\t62.50 (100.0%)\t-"));
  std::ostringstream ranks;
  WriteRanksTsv(ranks, r);
  EXPECT_EQ(ranks.str(),
            "query_index\ttype\tclass\ttarget_id\trank\n"
            "0\t1p\tpublic\t1\t1\n1\t1p\tpublic\t1\t4\n");
  EXPECT_EQ(ParseClass(ClassName(AnswerClass::kPrivate)), AnswerClass::kPrivate);
  EXPECT_EQ(ParseProtection(ProtectionName(Protection::Kind::kNoise)),
            Protection::Kind::kNoise);
  EXPECT_FALSE(ParseProtection("dp").has_value());
}

// Test queries over the toy graph: every one-hop query with its tagged
// answers and no valid answers.
std::vector<BenchmarkQuery> ToyTestQueries(const KnowledgeGraph& g) {
  std::map<std::string, BenchmarkQuery> unique;
  for (const Triple& t : g.triples()) {
    for (const Query& q :
         {Query::Project(t.relation, Direction::kForward, Query::Anchor(t.head)),
          Query::Project(t.relation, Direction::kBackward,
                         Query::Anchor(t.tail))}) {
      unique.emplace(ToSexpr(q, g.vocabulary()),
                     BenchmarkQuery{q, QueryType::k1p, {}, {},
                                    EvaluateTagged(g, q)});
    }
  }
  std::vector<BenchmarkQuery> out;
  for (auto& [text, q] : unique) out.push_back(std::move(q));
  return out;
}

TEST(EvaluateModelTest, MatchesLoopOracle) {
  const KnowledgeGraph toy = ToyGraph();
  const auto queries = ToyTestQueries(toy);
  const Encoder e(testing::SmallConfig(ModelKind::kQ2b), toy.num_vertices(),
                  toy.num_relations(), 3);
  const EvalReport r = EvaluateModel(e, toy.vocabulary(), queries);
  std::vector<RankRecord> expected;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto s = e.ScoreAll(queries[i].query);
    const VertexSet all = queries[i].test_answers.All();
    for (AnswerClass c : kAnswerClasses) {
      const VertexSet& targets = c == AnswerClass::kPublic
                                     ? queries[i].test_answers.public_members
                                     : queries[i].test_answers.private_members;
      for (VertexId t : targets) {
        std::size_t rank = 1;
        for (std::size_t u = 0; u < s.size(); ++u) {
          const bool known =
              std::binary_search(all.begin(), all.end(), MakeVertexId(u));
          if (!known && s[u] >= s[Index(t)]) ++rank;
        }
        expected.push_back({i, QueryType::k1p, c, t, rank});
      }
    }
  }
  EXPECT_EQ(r, ReportFromRanks(expected));
  EXPECT_EQ(r.All(AnswerClass::kPrivate).count, 2u);
  EXPECT_EQ(EvaluateModel(e, toy.vocabulary(), queries,
                          {Protection::Kind::kNoise, {0.0, 5}}),
            r);
}

TEST(EvaluateModelTest, ValidAnswersAreNotPublicTargets) {
  const KnowledgeGraph toy = ToyGraph();
  auto queries = ToyTestQueries(toy);
  std::size_t public_targets = 0;
  for (auto& q : queries) {
    if (q.test_answers.public_members.empty()) continue;
    q.valid_answers = {q.test_answers.public_members.front()};
    public_targets += q.test_answers.public_members.size() - 1;
  }
  const Encoder e(testing::SmallConfig(ModelKind::kGqe), toy.num_vertices(),
                  toy.num_relations(), 3);
  const EvalReport r = EvaluateModel(e, toy.vocabulary(), queries);
  EXPECT_EQ(r.All(AnswerClass::kPublic).count, public_targets);
}

TEST(EvaluateModelTest, PrivateTargetScoredLastHasZeroHitRate) {
  const KnowledgeGraph toy = ToyGraph();
  const Vocabulary& v = toy.vocabulary();
  ModelConfig config;
  config.kind = ModelKind::kGqe;
  config.dim = 2;
  Encoder e(config, toy.num_vertices(), toy.num_relations(), 1);
  ParameterStore& p = e.mutable_parameters();
  p.mutable_value(p.Id("entity")).Fill(0.0);
  p.mutable_value(p.Id("relation")).Fill(0.0);
  p.mutable_value(p.Id("entity"))(Index(v.Vertex("Hinton")), 0) = 100.0;
  const Query q = ParseQuery("(rp LiveIn (a Toronto))", v);
  const std::vector<BenchmarkQuery> queries = {
      {q, QueryType::k1p, {}, {}, EvaluateTagged(toy, q)}};
  const EvalReport r = EvaluateModel(e, v, queries);
  const Metrics& m = r.All(AnswerClass::kPrivate);
  ASSERT_EQ(m.count, 1u);
  EXPECT_EQ(m.hr10, 0.0);
  EXPECT_EQ(r.ranks.back().rank, toy.num_vertices() - 1);
}

TEST(EvaluateModelTest, RejectsMismatchedVocabulary) {
  const KnowledgeGraph toy = ToyGraph();
  const Encoder e(testing::SmallConfig(ModelKind::kGqe), toy.num_vertices() + 1,
                  toy.num_relations(), 1);
  EXPECT_THROW(EvaluateModel(e, toy.vocabulary(), ToyTestQueries(toy)),
               InvalidArgument);
  const Encoder ok(testing::SmallConfig(ModelKind::kGqe), toy.num_vertices(),
                   toy.num_relations(), 1);
  const std::vector<BenchmarkQuery> bad = {
      {Query::Anchor(MakeVertexId(500)), QueryType::kOther, {}, {}, {}}};
  EXPECT_THROW(EvaluateModel(ok, toy.vocabulary(), bad), InvalidArgument);
}

TEST(CalibrateSigmaTest, HitsTargetOrReturnsZero) {
  const KnowledgeGraph toy = ToyGraph();
  const auto queries = ToyTestQueries(toy);
  TrainConfig config;
  config.model.dim = 8;
  config.optimizer.learning_rate = 0.05;
  config.epochs = 60;
  config.batch_size = 8;
  std::vector<TrainingExample> examples;
  for (const auto& q : queries) {
    examples.push_back({q.query, q.test_answers.public_members});
  }
  std::erase_if(examples, [](const auto& e) { return e.answers.empty(); });
  Encoder e = InitialEncoder(config, toy.num_vertices(), toy.num_relations());
  Train(e, examples, {}, config);
  const double clean =
      EvaluateModel(e, toy.vocabulary(), queries).All(AnswerClass::kPublic).mrr;

  const CalibrationResult none =
      CalibrateSigma(e, toy.vocabulary(), queries, clean * 1.5, 4);
  EXPECT_EQ(none.sigma, 0.0);
  EXPECT_EQ(none.evaluations, 1u);

  const double target = 0.6 * clean;
  const CalibrationResult r =
      CalibrateSigma(e, toy.vocabulary(), queries, target, 4);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.sigma, 0.0);
  EXPECT_NEAR(r.public_metrics.mrr, target, 0.05 * target);
  const EvalReport check = EvaluateModel(
      e, toy.vocabulary(), queries,
      {Protection::Kind::kNoise, NoiseConfig{r.sigma, 4}});
  EXPECT_EQ(check.All(AnswerClass::kPublic), r.public_metrics);
  EXPECT_THROW(CalibrateSigma(e, toy.vocabulary(), queries, 0.0, 4),
               InvalidArgument);
}

}  // namespace
}  // namespace ngdb
