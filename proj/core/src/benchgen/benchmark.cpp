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

#include "ngdb/benchgen/benchmark.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <utility>

#include "ngdb/common/error.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/kg/io.hpp"
#include "ngdb/query/parser.hpp"

namespace ngdb {
namespace {

std::vector<Triple> Difference(std::span<const Triple> a,
                               std::span<const Triple> b) {
  // Both inputs sorted.
  std::vector<Triple> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<Triple> Sorted(std::vector<Triple> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Template shapes, grown backward from an answer vertex.
struct Shape {
  enum Kind { kAnchor, kProject, kIntersect, kUnite } kind;
  std::vector<Shape> children;
};

Shape A() { return {Shape::kAnchor, {}}; }
Shape P(Shape child) { return {Shape::kProject, {std::move(child)}}; }
Shape I(std::vector<Shape> c) { return {Shape::kIntersect, std::move(c)}; }
Shape U(std::vector<Shape> c) { return {Shape::kUnite, std::move(c)}; }

Shape TemplateFor(QueryType type) {
  switch (type) {
    case QueryType::k1p:
      return P(A());
    case QueryType::k2p:
      return P(P(A()));
    case QueryType::k2i:
      return I({P(A()), P(A())});
    case QueryType::k3i:
      return I({P(A()), P(A()), P(A())});
    case QueryType::kPi:
      return I({P(P(A())), P(A())});
    case QueryType::kIp:
      return P(I({P(A()), P(A())}));
    case QueryType::k2u:
      return U({P(A()), P(A())});
    case QueryType::kUp:
      return P(U({P(A()), P(A())}));
    case QueryType::kOther:
      break;
  }
  throw InvalidArgument("no sampling template for query type other");
}

// One way to reach a vertex by a single projection.
struct Step {
  VertexId from;
  RelationId relation;
  Direction direction;
};

class Walker {
 public:
  Walker(const KnowledgeGraph& g, Rng& rng)
      : rng_(rng), incoming_(g.num_vertices()) {
    for (const Triple& t : g.triples()) {
      incoming_[Index(t.tail)].push_back(
          {t.head, t.relation, Direction::kForward});
      incoming_[Index(t.head)].push_back(
          {t.tail, t.relation, Direction::kBackward});
    }
    for (std::size_t v = 0; v < incoming_.size(); ++v) {
      if (!incoming_[v].empty()) targets_.push_back(MakeVertexId(v));
    }
  }

  bool empty() const { return targets_.empty(); }

  VertexId RandomTarget() {
    return targets_[rng_.UniformIndex(targets_.size())];
  }

  std::optional<Query> Grow(const Shape& shape, VertexId target) {
    switch (shape.kind) {
      case Shape::kAnchor:
        return Query::Anchor(target);
      case Shape::kProject: {
        const auto& steps = incoming_[Index(target)];
        if (steps.empty()) return std::nullopt;
        const Step& s = steps[rng_.UniformIndex(steps.size())];
        auto child = Grow(shape.children.front(), s.from);
        if (!child) return std::nullopt;
        return Query::Project(s.relation, s.direction, std::move(*child));
      }
      case Shape::kIntersect:
      case Shape::kUnite: {
        std::vector<Query> children;
        for (const Shape& c : shape.children) {
          auto q = Grow(c, target);
          if (!q) return std::nullopt;
          for (const Query& prev : children) {
            if (prev == *q) return std::nullopt;
          }
          children.push_back(std::move(*q));
        }
        return shape.kind == Shape::kIntersect
                   ? Query::Intersect(std::move(children))
                   : Query::Unite(std::move(children));
      }
    }
    return std::nullopt;
  }

 private:
  Rng& rng_;
  std::vector<std::vector<Step>> incoming_;
  std::vector<VertexId> targets_;
};

const KnowledgeGraph& RoleGraph(const GraphSplit& split, Split role) {
  switch (role) {
    case Split::kTrain:
      return split.train;
    case Split::kValid:
      return split.valid;
    case Split::kTest:
      return split.test;
  }
  throw InvalidArgument("unknown split");
}

std::string JoinNames(const VertexSet& set, const Vocabulary& vocab) {
  std::string out;
  for (VertexId v : set) {
    const std::string& name = vocab.VertexName(v);
    if (name.find_first_of(",\t\n") != std::string::npos) {
      throw InvalidArgument("vertex name '" + name +
                            "' cannot be written to a benchmark file");
    }
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

VertexSet ParseNames(std::string_view field, const Vocabulary& vocab,
                     std::size_t line) {
  VertexSet out;
  while (!field.empty()) {
    const std::size_t comma = field.find(',');
    const std::string_view name = field.substr(0, comma);
    const auto v = vocab.FindVertex(name);
    if (!v) {
      throw ParseError("unknown vertex '" + std::string(name) + "'", line);
    }
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    field.remove_prefix(comma + 1);
  }
  Normalize(out);
  return out;
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
  }
  return "?";
}

std::optional<Split> ParseSplit(std::string_view name) {
  for (Split s : kSplits) {
    if (SplitName(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Triple> SamplePrivateEdges(const KnowledgeGraph& g, std::size_t n,
                                       std::uint64_t seed) {
  std::vector<Triple> pool = g.AttributeTriples();
  if (n > pool.size()) {
    throw InvalidArgument("requested " + std::to_string(n) +
                          " private edges but the graph has only " +
                          std::to_string(pool.size()) + " attribute triples");
  }
  // Partial Fisher-Yates: the first n slots become a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(pool[i], pool[i + rng.UniformIndex(pool.size() - i)]);
  }
  pool.resize(n);
  return Sorted(std::move(pool));
}

GraphSplit SplitEdges(const KnowledgeGraph& g,
                      std::span<const Triple> private_triples,
                      std::uint64_t seed) {
  const std::vector<Triple> secret =
      Sorted({private_triples.begin(), private_triples.end()});
  // Validates that every private triple is an attribute triple of g.
  const KnowledgeGraph marked = MarkPrivate(g, secret);

  std::vector<Triple> open = Difference(g.triples(), secret);
  Rng rng(seed);
  rng.Shuffle(std::span<Triple>(open));
  const std::size_t n = open.size();
  const std::size_t n_train = (8 * n + 5) / 10;
  const std::size_t n_train_valid = (9 * n + 5) / 10;

  const auto vocab = g.shared_vocabulary();
  std::vector<Triple> train(open.begin(), open.begin() + n_train);
  std::vector<Triple> valid(open.begin(), open.begin() + n_train_valid);
  std::vector<Triple> test = open;
  test.insert(test.end(), secret.begin(), secret.end());
  return GraphSplit{KnowledgeGraph(vocab, std::move(train)),
                    KnowledgeGraph(vocab, std::move(valid)),
                    KnowledgeGraph(vocab, std::move(test), secret), secret};
}

std::vector<Triple> BucketEdges(const GraphSplit& split, Split bucket) {
  switch (bucket) {
    case Split::kTrain:
      return {split.train.triples().begin(), split.train.triples().end()};
    case Split::kValid:
      return Difference(split.valid.triples(), split.train.triples());
    case Split::kTest:
      return Difference(PublicView(split.test).triples(),
                        split.valid.triples());
  }
  throw InvalidArgument("unknown split");
}

void SaveSplit(const std::filesystem::path& dir, const GraphSplit& split) {
  std::filesystem::create_directories(dir);
  const Vocabulary& vocab = split.test.vocabulary();
  SaveVocabulary(dir, vocab);
  for (Split s : kSplits) {
    SaveTriples(dir / (std::string(SplitName(s)) + ".tsv"),
                BucketEdges(split, s), vocab);
  }
  SaveTriples(dir / "private.tsv", split.private_triples, vocab);
}

GraphSplit LoadSplit(const std::filesystem::path& dir) {
  auto vocab = LoadVocabulary(dir);
  std::vector<Triple> train = LoadTripleSet(dir / "train.tsv", *vocab);
  std::vector<Triple> valid = train;
  const auto valid_only = LoadTripleSet(dir / "valid.tsv", *vocab);
  valid.insert(valid.end(), valid_only.begin(), valid_only.end());
  std::vector<Triple> test = valid;
  const auto test_only = LoadTripleSet(dir / "test.tsv", *vocab);
  test.insert(test.end(), test_only.begin(), test_only.end());
  const auto secret = Sorted(LoadTripleSet(dir / "private.tsv", *vocab));
  test.insert(test.end(), secret.begin(), secret.end());
  return GraphSplit{KnowledgeGraph(vocab, std::move(train)),
                    KnowledgeGraph(vocab, std::move(valid)),
                    KnowledgeGraph(vocab, std::move(test), secret), secret};
}

std::vector<BenchmarkQuery> SampleQueries(const GraphSplit& split, Split role,
                                          QueryType type, std::size_t n,
                                          std::uint64_t seed,
                                          const SamplerOptions& options) {
  const Shape shape = TemplateFor(type);
  std::vector<BenchmarkQuery> out;
  if (n == 0) return out;

  Rng rng(DeriveSeed(DeriveSeed(seed, static_cast<std::uint64_t>(role)),
                     static_cast<std::uint64_t>(type)));
  const KnowledgeGraph& graph = RoleGraph(split, role);
  Walker walker(graph, rng);
  if (walker.empty()) {
    throw ExhaustedError(std::string(SplitName(role)) + " graph has no edges");
  }
  const Vocabulary& vocab = graph.vocabulary();
  std::set<std::string> seen;
  while (out.size() < n) {
    bool emitted = false;
    for (std::size_t attempt = 0; attempt < options.retry_budget; ++attempt) {
      auto q = walker.Grow(shape, walker.RandomTarget());
      if (!q) continue;
      std::string key = ToSexpr(*q, vocab);
      if (seen.contains(key)) continue;
      BenchmarkQuery bq{*q, type, Evaluate(split.train, *q),
                        Evaluate(split.valid, *q),
                        EvaluateTagged(split.test, *q, options.mode)};
      const bool keep =
          role == Split::kTrain
              ? !bq.train_answers.empty()
          : role == Split::kValid
              ? bq.valid_answers.size() > bq.train_answers.size()
              : bq.test_answers.All().size() > bq.valid_answers.size();
      if (!keep) continue;
      seen.insert(std::move(key));
      out.push_back(std::move(bq));
      emitted = true;
      break;
    }
    if (!emitted) {
      throw ExhaustedError(
          "sampler exhausted " + std::to_string(options.retry_budget) +
          " attempts for a " + std::string(TypeName(type)) + " " +
          std::string(SplitName(role)) + " query after " +
          std::to_string(out.size()) + " queries");
    }
  }
  return out;
}

TaggedAnswerSet RoleAnswers(const BenchmarkQuery& q, Split role) {
  switch (role) {
    case Split::kTrain:
      return {q.train_answers, {}};
    case Split::kValid:
      return {q.valid_answers, {}};
    case Split::kTest:
      return q.test_answers;
  }
  throw InvalidArgument("unknown split");
}

BenchmarkStats Stats(std::span<const BenchmarkQuery> queries, Split role) {
  BenchmarkStats stats;
  for (const BenchmarkQuery& q : queries) {
    if (q.type == QueryType::kOther) continue;
    const TaggedAnswerSet a = RoleAnswers(q, role);
    for (TypeStats* s :
         {&stats.per_type[static_cast<std::size_t>(q.type)], &stats.all}) {
      s->queries += 1;
      s->public_answers += a.public_members.size();
      s->private_answers += a.private_members.size();
    }
  }
  return stats;
}

void WriteStats(std::ostream& out,
                std::span<const std::pair<Split, BenchmarkStats>> rows) {
  out << "split\tcount";
  for (QueryType t : kBenchmarkTypes) out << '\t' << TypeName(t);
  out << "\tAll\n";
  for (const auto& [split, stats] : rows) {
    const auto row = [&](std::string_view label, auto field) {
      out << SplitName(split) << '\t' << label;
      for (const TypeStats& s : stats.per_type) out << '\t' << s.*field;
      out << '\t' << stats.all.*field << '\n';
    };
    row("queries", &TypeStats::queries);
    row("public", &TypeStats::public_answers);
    row("private", &TypeStats::private_answers);
  }
}

void WriteBenchmark(std::ostream& out, std::span<const BenchmarkQuery> queries,
                    const Vocabulary& vocab) {
  for (const BenchmarkQuery& q : queries) {
    out << ToSexpr(q.query, vocab) << '\t' << JoinNames(q.train_answers, vocab)
        << '\t' << JoinNames(q.valid_answers, vocab) << '\t'
        << JoinNames(q.test_answers.public_members, vocab) << '\t'
        << JoinNames(q.test_answers.private_members, vocab) << '\n';
  }
}

std::vector<BenchmarkQuery> ReadBenchmark(std::istream& in,
                                          const Vocabulary& vocab) {
  std::vector<BenchmarkQuery> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 5) {
      throw ParseError("expected 5 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       number);
    }
    Query q = [&] {
      try {
        return ParseQuery(fields[0], vocab);
      } catch (const ParseError& e) {
        throw ParseError(std::string("query: ") + e.what(), number);
      }
    }();
    BenchmarkQuery bq{q, ClassifyType(q), ParseNames(fields[1], vocab, number),
                      ParseNames(fields[2], vocab, number),
                      {ParseNames(fields[3], vocab, number),
                       ParseNames(fields[4], vocab, number)}};
    out.push_back(std::move(bq));
  }
  return out;
}

std::vector<BenchmarkQuery> LoadBenchmark(const std::filesystem::path& path,
                                          const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open " + path.string());
  return ReadBenchmark(in, vocab);
}

std::string BenchmarkFileName(Split split, QueryType type) {
  return std::string(SplitName(split)) + "_" + std::string(TypeName(type)) +
         ".tsv";
}

}  // namespace ngdb
