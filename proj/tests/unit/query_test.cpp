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

#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ngdb/benchgen/graphs.hpp"
#include "ngdb/common/error.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/kg/graph.hpp"
#include "ngdb/query/dnf.hpp"
#include "ngdb/query/parser.hpp"
#include "ngdb/query/query.hpp"
#include "ngdb/query/query_type.hpp"
#include "ngdb/symbolic/evaluate.hpp"
#include "test_support.hpp"

namespace ngdb {
namespace {

class QueryTest : public ::testing::Test {
 protected:
  Query Parse(const std::string& text) {
    return ParseQuery(text, toy_.vocabulary());
  }
  VertexId V(const std::string& name) {
    return toy_.vocabulary().Vertex(name);
  }
  RelationId R(const std::string& name) {
    return toy_.vocabulary().Relation(name);
  }

  KnowledgeGraph toy_ = ToyGraph();
};

TEST_F(QueryTest, ParsesOneHopProjection) {
  const Query q = Parse("(p LiveIn (a Hinton))");
  const auto* p = As<ProjectionNode>(q);
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->relation, R("LiveIn"));
  EXPECT_EQ(p->direction, Direction::kForward);
  const auto* a = As<AnchorNode>(p->child);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->vertex, V("Hinton"));
  EXPECT_EQ(ClassifyType(q), QueryType::k1p);
}

TEST_F(QueryTest, ParsesReverseProjection) {
  const Query q = Parse("(rp LiveIn (a Toronto))");
  EXPECT_EQ(q, Query::Project(R("LiveIn"), Direction::kBackward,
                              Query::Anchor(V("Toronto"))));
}

TEST_F(QueryTest, ArityErrors) {
  EXPECT_THROW(Parse("(i (a Hinton))"), ParseError);
  EXPECT_THROW(Parse("(u (a Hinton))"), ParseError);
  EXPECT_THROW(Query::Intersect({Query::Anchor(V("Hinton"))}),
               InvalidArgument);
}

TEST_F(QueryTest, SyntaxErrorsCarryOffsets) {
  try {
    Parse("(p LiveIn (a Hinton)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GE(e.location(), 19u);
  }
  try {
    Parse("(p LiveIn (a Nobody))");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 13u);
  }
  EXPECT_THROW(Parse("(p Unknown (a Hinton))"), ParseError);
  EXPECT_THROW(Parse("(n (p LiveIn (a Hinton)))"), ParseError);
  EXPECT_THROW(Parse("(p LiveIn (a Hinton)) extra"), ParseError);
  EXPECT_THROW(Parse(""), ParseError);
}

TEST_F(QueryTest, TwoHopRoundTrip) {
  const Query q = Parse("(p LocatedIn (p WorksAt (a Hinton)))");
  EXPECT_EQ(ClassifyType(q), QueryType::k2p);
  EXPECT_EQ(Parse(ToSexpr(q, toy_.vocabulary())), q);
}

TEST_F(QueryTest, QuotedNamesRoundTrip) {
  Vocabulary vocab = toy_.vocabulary();
  const VertexId odd = vocab.InternVertex("New \"York\" (city)");
  const Query q = Query::Project(vocab.Relation("LiveIn"), Direction::kBackward,
                                 Query::Anchor(odd));
  const std::string text = ToSexpr(q, vocab);
  EXPECT_EQ(ParseQuery(text, vocab), q);
}

TEST(QueryRoundTripTest, RandomQueriesSurviveSerialization) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng);
    for (QueryType t : kBenchmarkTypes) {
      const Query q = testing::RandomQuery(g, t, rng);
      ASSERT_EQ(ParseQuery(ToSexpr(q, g.vocabulary()), g.vocabulary()), q);
      ASSERT_EQ(ClassifyType(q), t) << ToSexpr(q, g.vocabulary());
    }
  }
}

TEST_F(QueryTest, ClassifiesAllTemplates) {
  const std::vector<std::pair<std::string, QueryType>> cases = {
      {"(p LiveIn (a Hinton))", QueryType::k1p},
      {"(p LocatedIn (p WorksAt (a Hinton)))", QueryType::k2p},
      {"(i (p WorksAt (a Hinton)) (p WorksAt (a LeCun)))", QueryType::k2i},
      {"(i (rp LiveIn (a Toronto)) (rp Field (a DeepLearning)) "
       "(rp WinAward (a TuringAward)))",
       QueryType::k3i},
      {"(i (p LocatedIn (p WorksAt (a Hinton))) (p LiveIn (a LeCun)))",
       QueryType::kPi},
      {"(p LocatedIn (i (p WorksAt (a Hinton)) (p WorksAt (a LeCun))))",
       QueryType::kIp},
      {"(u (p LiveIn (a Hinton)) (p LiveIn (a LeCun)))", QueryType::k2u},
      {"(p LocatedIn (u (p WorksAt (a Hinton)) (p WorksAt (a LeCun))))",
       QueryType::kUp},
      {"(p LocatedIn (p LocatedIn (p LocatedIn (p WorksAt (a Hinton)))))",
       QueryType::kOther},
      {"(a Hinton)", QueryType::kOther},
  };
  for (const auto& [text, type] : cases) {
    EXPECT_EQ(ClassifyType(Parse(text)), type) << text;
  }
}

TEST_F(QueryTest, ClassificationIgnoresChildOrder) {
  EXPECT_EQ(ClassifyType(Parse("(i (p LiveIn (a LeCun)) "
                               "(p LocatedIn (p WorksAt (a Hinton))))")),
            QueryType::kPi);
  EXPECT_EQ(ClassifyType(Parse("(i (rp WinAward (a TuringAward)) "
                               "(rp Field (a DeepLearning)) "
                               "(rp LiveIn (a Toronto)))")),
            QueryType::k3i);
}

TEST_F(QueryTest, DnfOfUnionFreeQueryIsIdentity) {
  const Query q = Parse("(i (p WorksAt (a Hinton)) (p WorksAt (a LeCun)))");
  const DnfQuery dnf = ToDnf(q);
  ASSERT_EQ(dnf.disjuncts.size(), 1u);
  EXPECT_EQ(dnf.disjuncts[0], q);
}

TEST_F(QueryTest, DnfDistributesProjectionOverUnion) {
  const DnfQuery dnf =
      ToDnf(Parse("(p LocatedIn (u (a UofT) (a NYU)))"));
  ASSERT_EQ(dnf.disjuncts.size(), 2u);
  EXPECT_EQ(dnf.disjuncts[0], Parse("(p LocatedIn (a UofT))"));
  EXPECT_EQ(dnf.disjuncts[1], Parse("(p LocatedIn (a NYU))"));
}

// Semantics preservation: evaluate(q) equals the union of the disjuncts'
// answers; disjuncts are union-free and no deeper than q.
TEST(DnfTest, PreservesSemanticsOnRandomGraphs) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng);
    const QueryType t = kBenchmarkTypes[rng.UniformIndex(kBenchmarkTypes.size())];
    const Query q = testing::RandomQuery(g, t, rng);
    const DnfQuery dnf = ToDnf(q);
    ASSERT_FALSE(dnf.disjuncts.empty());
    VertexSet merged;
    for (const Query& d : dnf.disjuncts) {
      EXPECT_FALSE(d.ContainsUnion());
      EXPECT_LE(d.Depth(), q.Depth());
      merged = SetUnion(merged, Evaluate(g, d));
    }
    ASSERT_EQ(merged, Evaluate(g, q)) << ToSexpr(q, g.vocabulary());
  }
}

TEST(QueryTypeTest, NamesRoundTrip) {
  for (QueryType t : kBenchmarkTypes) {
    EXPECT_EQ(ParseType(TypeName(t)), t);
  }
  EXPECT_FALSE(ParseType("3p").has_value());
}

}  // namespace
}  // namespace ngdb
