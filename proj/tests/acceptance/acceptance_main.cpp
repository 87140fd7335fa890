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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Optional arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ngdb/benchgen/benchmark.hpp"
#include "ngdb/benchgen/graphs.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/evaluator/evaluator.hpp"
#include "ngdb/kg/graph.hpp"
#include "ngdb/numerics/ops.hpp"
#include "ngdb/query/parser.hpp"
#include "ngdb/query/query_type.hpp"
#include "ngdb/symbolic/evaluate.hpp"
#include "ngdb/symbolic/oracle.hpp"
#include "ngdb/trainer/trainer.hpp"
#include "test_support.hpp"

namespace ngdb {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Criteria 1 and 2 share their instances.
struct SymbolicInstances {
  std::vector<KnowledgeGraph> graphs;
  std::vector<std::pair<std::size_t, Query>> queries;  // (graph, query)
};

const SymbolicInstances& Instances() {
  static const SymbolicInstances* instances = [] {
    auto* s = new SymbolicInstances;
    Rng rng(2026);
    testing::RandomGraphOptions options;
    options.max_vertices = 60;
    options.max_relations = 8;
    for (std::size_t g = 0; g < 50; ++g) {
      s->graphs.push_back(testing::RandomGraph(rng, options));
    }
    for (std::size_t i = 0; i < 500; ++i) {
      const std::size_t g = i % s->graphs.size();
      const QueryType t = kBenchmarkTypes[i % kBenchmarkTypes.size()];
      s->queries.emplace_back(g, testing::RandomQuery(s->graphs[g], t, rng));
    }
    return s;
  }();
  return *instances;
}

Outcome SymbolicOracle() {
  const auto start = std::chrono::steady_clock::now();
  const SymbolicInstances& s = Instances();
  std::size_t mismatches = 0, nonempty = 0;
  std::set<QueryType> types;
  for (const auto& [g, q] : s.queries) {
    const AnswerSet answers = Evaluate(s.graphs[g], q);
    mismatches += answers != BruteForceOracle(s.graphs[g], q);
    nonempty += !answers.empty();
    types.insert(ClassifyType(q));
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && types.size() == 8 && secs < 60.0,
          Format("%zu graphs, %zu queries, %zu types, %zu non-empty, "
                 "%zu mismatches, %.1fs",
                 s.graphs.size(), s.queries.size(), types.size(), nonempty,
                 mismatches, secs)};
}

Outcome TaggingAlgebra() {
  const SymbolicInstances& s = Instances();
  std::vector<KnowledgeGraph> public_views;
  for (const auto& g : s.graphs) public_views.push_back(PublicView(g));
  std::size_t violations = 0, with_private = 0;
  for (const auto& [g, q] : s.queries) {
    const TaggedAnswerSet t = EvaluateTagged(s.graphs[g], q);
    violations += !SetIntersection(t.public_members, t.private_members).empty();
    violations += t.All() != Evaluate(s.graphs[g], q);
    violations += t.public_members != Evaluate(public_views[g], q);
    with_private += !t.private_members.empty();
  }
  const KnowledgeGraph toy = ToyGraph();
  const Query q = ParseQuery("(p LiveIn (a Hinton))", toy.vocabulary());
  const TaggedAnswerSet toy_tags = EvaluateTagged(toy, q);
  const bool toy_ok =
      toy_tags.public_members.empty() &&
      toy_tags.private_members ==
          VertexSet{toy.vocabulary().Vertex("Toronto")};
  return {violations == 0 && toy_ok,
          Format("%zu violations over %zu queries (%zu with private answers); "
                 "toy Toronto tagged %s",
                 violations, s.queries.size(), with_private,
                 toy_ok ? "private" : "WRONG")};
}

Outcome GradientCorrectness() {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;
  for (ModelKind kind : {ModelKind::kGqe, ModelKind::kQ2b, ModelKind::kQ2p}) {
    double worst = 0.0;
    std::size_t checked = 0, skipped = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(DeriveSeed(31, seed));
      testing::RandomGraphOptions options;
      options.max_vertices = 14;
      options.max_relations = 4;
      options.max_triples = 50;
      options.private_fraction = 0.5;
      const KnowledgeGraph g = testing::RandomGraph(rng, options);
      std::vector<TrainingExample> batch;
      for (QueryType t : {kBenchmarkTypes[seed % 8], kBenchmarkTypes[(seed + 3) % 8]}) {
        const Query q = testing::RandomQuery(g, t, rng);
        batch.push_back({q, {MakeVertexId(rng.UniformIndex(g.num_vertices()))}});
      }
      std::vector<Triple> priv(g.private_triples().begin(),
                               g.private_triples().end());
      if (priv.empty()) priv.push_back(g.triples().front());
      Encoder encoder(testing::SmallConfig(kind), g.num_vertices(),
                      g.num_relations(), DeriveSeed(seed, 1));
      const CandidateSampler all{g.num_vertices(), 0};
      const double beta = 0.5;
      const testing::LossFn loss = [&](Tape& tape) {
        Rng draw(seed);
        const Var lu = PublicLoss(tape, encoder, batch, all, draw);
        const Var lp = PrivacyLoss(tape, encoder, priv, PrivacyDirection::kBoth,
                                   all, draw);
        return TotalLoss(lu, lp, beta);
      };
      const auto r = testing::CheckGradients(encoder.mutable_parameters(), loss,
                                             rng, 8, 1e-5);
      worst = std::max(worst, r.max_relative_error);
      checked += r.checked;
      skipped += r.skipped;
    }
    const bool ok = worst < 1e-4 && skipped * 50 <= checked + skipped;
    pass &= ok;
    detail += Format("%s max rel err %.2e (%zu coords, %zu kinks skipped); ",
                     std::string(ModelName(kind)).c_str(), worst, checked,
                     skipped);
  }
  const double secs = Seconds(start);
  pass &= secs < 120.0;
  return {pass, detail + Format("%.1fs", secs)};
}

// Criteria 4 to 6: one synthetic benchmark and a beta sweep.
struct Sweep {
  std::vector<double> betas;
  std::vector<double> public_mrr;
  std::vector<double> private_mrr;
  double sigma = 0.0;
  bool calibrated = false;
  double noise_public_mrr = 0.0;
  double noise_private_mrr = 0.0;
  double protection_seconds = 0.0;
  std::string setup;
};

TrainConfig SweepConfig(double beta) {
  TrainConfig c;
  c.model.kind = ModelKind::kGqe;
  c.model.dim = 32;
  c.beta = beta;
  c.optimizer.learning_rate = 0.01;
  c.epochs = 20;
  c.batch_size = 64;
  c.seed = 5;
  c.privacy_sample = 20;
  c.privacy_direction = PrivacyDirection::kBoth;
  c.entity_max_norm = 4.0;
  return c;
}

const Sweep& RunSweep() {
  static const Sweep* sweep = [] {
    auto* s = new Sweep;
    const auto start = std::chrono::steady_clock::now();
    const KnowledgeGraph g = SyntheticGraph({}, 11);
    const auto priv = SamplePrivateEdges(g, 100, 12);
    const GraphSplit split = SplitEdges(g, priv, 13);
    std::vector<BenchmarkQuery> train, test;
    for (QueryType t : kBenchmarkTypes) {
      const auto seed = static_cast<std::uint64_t>(t);
      auto a = SampleQueries(split, Split::kTrain, t, 300, 100 + seed);
      train.insert(train.end(), a.begin(), a.end());
      auto b = SampleQueries(split, Split::kTest, t, 200, 200 + seed);
      test.insert(test.end(), b.begin(), b.end());
    }
    const BenchmarkStats stats = Stats(test, Split::kTest);
    s->setup = Format("KG %zu vertices, %zu triples, %zu private; %zu test "
                      "queries (%zu public, %zu private answers)",
                      g.num_vertices(), g.num_triples(), priv.size(),
                      test.size(), stats.all.public_answers,
                      stats.all.private_answers);
    const auto examples = TrainingExamples(train);
    std::unique_ptr<Encoder> unprotected;
    for (double beta : {0.0, 0.5, 0.01, 0.05, 0.1, 1.0}) {
      const TrainConfig c = SweepConfig(beta);
      Encoder e = InitialEncoder(c, g.num_vertices(), g.num_relations());
      Train(e, examples, split.private_triples, c);
      const EvalReport r = EvaluateModel(e, g.vocabulary(), test);
      s->betas.push_back(beta);
      s->public_mrr.push_back(r.All(AnswerClass::kPublic).mrr);
      s->private_mrr.push_back(r.All(AnswerClass::kPrivate).mrr);
      if (beta == 0.0) unprotected = std::make_unique<Encoder>(std::move(e));
      if (beta == 0.5) s->protection_seconds = Seconds(start);
    }
    const CalibrationResult cal =
        CalibrateSigma(*unprotected, g.vocabulary(), test, s->public_mrr[1], 77);
    s->sigma = cal.sigma;
    s->calibrated = cal.converged;
    s->noise_public_mrr = cal.public_metrics.mrr;
    s->noise_private_mrr = cal.private_metrics.mrr;
    return s;
  }();
  return *sweep;
}

std::size_t BetaIndex(const Sweep& s, double beta) {
  return static_cast<std::size_t>(
      std::find(s.betas.begin(), s.betas.end(), beta) - s.betas.begin());
}

Outcome AdversarialProtection() {
  const Sweep& s = RunSweep();
  const double pub0 = s.public_mrr[BetaIndex(s, 0.0)];
  const double priv0 = s.private_mrr[BetaIndex(s, 0.0)];
  const double pub = s.public_mrr[BetaIndex(s, 0.5)];
  const double priv = s.private_mrr[BetaIndex(s, 0.5)];
  const double private_ratio = priv / priv0;
  const double public_ratio = pub / pub0;
  return {private_ratio <= 0.5 && public_ratio >= 0.6 &&
              s.protection_seconds < 600.0,
          Format("%s; beta=0 public %.4f private %.4f; beta=0.5 public %.4f "
                 "(%.1f%%) private %.4f (%.1f%%); %.1fs",
                 s.setup.c_str(), pub0, priv0, pub, 100 * public_ratio, priv,
                 100 * private_ratio, s.protection_seconds)};
}

std::vector<double> Ranks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = 0.5 * (i + j) + 1;
    i = j + 1;
  }
  return rank;
}

double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = Ranks(x), ry = Ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Outcome BetaMonotonicity() {
  const Sweep& s = RunSweep();
  std::vector<double> betas, priv;
  std::string series;
  for (double beta : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    betas.push_back(beta);
    priv.push_back(s.private_mrr[BetaIndex(s, beta)]);
    series += Format("%g:%.4f ", beta, priv.back());
  }
  const double rho = Spearman(betas, priv);
  const double retention =
      s.public_mrr[BetaIndex(s, 0.01)] / s.public_mrr[BetaIndex(s, 0.0)];
  return {rho <= -0.8 && retention >= 0.9,
          Format("private MRR by beta %sSpearman %.2f; public retention at "
                 "beta=0.01 %.1f%%",
                 series.c_str(), rho, 100 * retention)};
}

Outcome NoiseBaseline() {
  const Sweep& s = RunSweep();
  const double target = s.public_mrr[BetaIndex(s, 0.5)];
  const double pngdb_private = s.private_mrr[BetaIndex(s, 0.5)];
  const double gap = std::abs(s.noise_public_mrr - target) / target;
  return {s.calibrated && gap <= 0.05 && pngdb_private < s.noise_private_mrr,
          Format("sigma %.4f: noise public %.4f vs target %.4f (%.1f%% off); "
                 "private noise %.4f vs adversarial %.4f",
                 s.sigma, s.noise_public_mrr, target, 100 * gap,
                 s.noise_private_mrr, pngdb_private)};
}

Outcome MetricOracle() {
  Rng rng(7);
  std::size_t mismatches = 0;
  std::vector<std::size_t> ranks, oracle_ranks;
  for (int table = 0; table < 10000; ++table) {
    const std::size_t n = 2 + rng.UniformIndex(200);
    std::vector<double> scores(n);
    const bool coarse = rng.Bernoulli(0.5);
    for (double& x : scores) {
      x = coarse ? static_cast<double>(rng.UniformIndex(10)) : rng.Normal();
    }
    const std::size_t target = rng.UniformIndex(n);
    std::vector<VertexId> filter;
    std::vector<bool> filtered(n, false);
    for (std::size_t u = 0; u < n; ++u) {
      if (u != target && rng.Bernoulli(0.1)) {
        filter.push_back(MakeVertexId(u));
        filtered[u] = true;
      }
    }
    // Stable sort by descending score with the target after its ties.
    std::vector<std::size_t> order;
    for (std::size_t u = 0; u < n; ++u) {
      if (!filtered[u]) order.push_back(u);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return a != target && b == target;
    });
    const std::size_t expected = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), target) - order.begin() + 1);
    const std::size_t got = Rank(scores, MakeVertexId(target), filter);
    mismatches += got != expected;
    ranks.push_back(got);
    oracle_ranks.push_back(expected);
  }
  double hits1 = 0, hits3 = 0, hits10 = 0, rr = 0;
  for (std::size_t r : oracle_ranks) {
    hits1 += r <= 1;
    hits3 += r <= 3;
    hits10 += r <= 10;
    rr += 1.0 / static_cast<double>(r);
  }
  const double n = static_cast<double>(oracle_ranks.size());
  const Metrics m = ComputeMetrics(ranks);
  const bool metrics_equal = m.hr1 == hits1 / n && m.hr3 == hits3 / n &&
                             m.hr10 == hits10 / n && m.mrr == rr / n;
  return {mismatches == 0 && metrics_equal,
          Format("10000 tables, %zu rank mismatches; MRR %.6f vs %.6f, "
                 "HR@10 %.6f vs %.6f",
                 mismatches, m.mrr, rr / n, m.hr10, hits10 / n)};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes a split and a small benchmark under `dir`.
void WriteArtifacts(const std::filesystem::path& dir) {
  std::filesystem::remove_all(dir);
  const KnowledgeGraph g = SyntheticGraph({}, 11);
  const GraphSplit split = SplitEdges(g, SamplePrivateEdges(g, 100, 12), 13);
  SaveSplit(dir / "split", split);
  for (Split role : kSplits) {
    for (QueryType t : kBenchmarkTypes) {
      std::ofstream out(dir / BenchmarkFileName(role, t));
      WriteBenchmark(out,
                     SampleQueries(split, role, t, 20,
                                   300 + static_cast<std::uint64_t>(t)),
                     g.vocabulary());
    }
  }
}

Outcome Conservation() {
  const KnowledgeGraph g = SyntheticGraph({}, 11);
  const auto priv = SamplePrivateEdges(g, 100, 12);
  const GraphSplit split = SplitEdges(g, priv, 13);
  const double n = static_cast<double>(g.num_triples() - priv.size());
  const std::size_t sizes[] = {BucketEdges(split, Split::kTrain).size(),
                               BucketEdges(split, Split::kValid).size(),
                               BucketEdges(split, Split::kTest).size()};
  const double shares[] = {0.8, 0.1, 0.1};
  bool ratio_ok = sizes[0] + sizes[1] + sizes[2] == n;
  for (int i = 0; i < 3; ++i) {
    ratio_ok &= std::abs(static_cast<double>(sizes[i]) - shares[i] * n) <= 1.0;
  }
  std::size_t leaked = 0;
  for (const Triple& t : priv) {
    leaked += split.train.Contains(t) + split.valid.Contains(t);
  }
  const bool private_ok = leaked == 0 &&
                          split.test.private_triples().size() == priv.size();

  const auto root = std::filesystem::temp_directory_path() / "ngdb_acceptance";
  WriteArtifacts(root / "a");
  WriteArtifacts(root / "b");
  std::size_t files = 0, differing = 0;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto other =
        root / "b" / std::filesystem::relative(entry.path(), root / "a");
    differing += Slurp(entry.path()) != Slurp(other);
  }
  std::filesystem::remove_all(root);
  const bool identical = files > 0 && differing == 0;
  return {ratio_ok && private_ok && identical,
          Format("buckets %zu/%zu/%zu of %.0f; %zu private edges leaked into "
                 "train/valid; %zu files, %zu differ across runs",
                 sizes[0], sizes[1], sizes[2], n, leaked, files, differing)};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace ngdb

int main(int argc, char** argv) {
  using ngdb::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "symbolic oracle equivalence", ngdb::SymbolicOracle},
      {2, "privacy tagging algebra", ngdb::TaggingAlgebra},
      {3, "gradient correctness", ngdb::GradientCorrectness},
      {4, "adversarial protection", ngdb::AdversarialProtection},
      {5, "beta monotonicity", ngdb::BetaMonotonicity},
      {6, "noise baseline comparison", ngdb::NoiseBaseline},
      {7, "metric oracle", ngdb::MetricOracle},
      {8, "benchmark conservation and determinism", ngdb::Conservation},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    ngdb::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
