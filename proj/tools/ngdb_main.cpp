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

// ngdb: command-line pipeline for building privacy benchmarks, training
// query encoders, and evaluating public and private answer retrieval.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "ngdb/benchgen/benchmark.hpp"
#include "ngdb/benchgen/graphs.hpp"
#include "ngdb/common/error.hpp"
#include "ngdb/encoders/encoder.hpp"
#include "ngdb/evaluator/evaluator.hpp"
#include "ngdb/kg/graph.hpp"
#include "ngdb/kg/io.hpp"
#include "ngdb/query/parser.hpp"
#include "ngdb/query/query_type.hpp"
#include "ngdb/symbolic/evaluate.hpp"
#include "ngdb/trainer/trainer.hpp"

namespace ngdb::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kUsageError = 2;
constexpr int kModuleError = 1;

// ---------------------------------------------------------------------------
// Digests and run manifests.

std::string Sha256File(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialization failed");
  }
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (in.gcount() > 0 &&
        EVP_DigestUpdate(ctx.get(), buffer.data(),
                         static_cast<std::size_t>(in.gcount())) != 1) {
      throw Error("SHA-256 update failed");
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error("SHA-256 finalization failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

// Regular files under `root` (or `root` itself), sorted by relative path.
std::vector<fs::path> FilesUnder(const fs::path& root) {
  if (fs::is_regular_file(root)) return {root};
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

Json Digests(const fs::path& root) {
  Json out = Json::object();
  for (const fs::path& f : FilesUnder(root)) {
    const fs::path rel = f == root ? f.filename() : fs::relative(f, root);
    out[rel.generic_string()] = Sha256File(f);
  }
  return out;
}

class Manifest {
 public:
  Manifest(std::string command, const CLI::App& app) : command_(std::move(command)) {
    for (const CLI::Option* opt : app.get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "-h") continue;
      const std::string key = opt->get_lnames().empty()
                                  ? name
                                  : opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& results = opt->results();
        config_[key] = results.size() == 1 ? Json(results.front())
                                           : Json(results);
      } else if (!opt->get_default_str().empty()) {
        config_[key] = opt->get_default_str();
      }
    }
  }

  void Seed(const std::string& name, std::uint64_t value) {
    seeds_[name] = value;
  }
  void Input(const std::string& name, const fs::path& path) {
    if (fs::exists(path)) inputs_[name] = {{"path", path.string()},
                                           {"sha256", Digests(path)}};
  }
  // Writes out/manifest.json listing every file under `out`.
  void Write(const fs::path& out) const {
    Json j;
    j["format"] = "ngdb-manifest";
    j["tool_version"] = NGDB_VERSION;
    j["command"] = command_;
    j["config"] = config_;
    j["seeds"] = seeds_;
    j["inputs"] = inputs_;
    j["outputs"] = Digests(out);
    std::ofstream file(out / "manifest.json");
    if (!file) throw Error("cannot write " + (out / "manifest.json").string());
    file << j.dump(2) << '\n';
  }

 private:
  std::string command_;
  Json config_ = Json::object();
  Json seeds_ = Json::object();
  Json inputs_ = Json::object();
};

// ---------------------------------------------------------------------------
// Artifact I/O.

// Graph directory layout: vertices.tsv, relations.tsv, triples.tsv and
// private.tsv (possibly empty).
void SaveGraph(const fs::path& dir, const KnowledgeGraph& g) {
  fs::create_directories(dir);
  SaveVocabulary(dir, g.vocabulary());
  SaveTriples(dir / "triples.tsv", g.triples(), g.vocabulary());
  SaveTriples(dir / "private.tsv", g.private_triples(), g.vocabulary());
}

KnowledgeGraph LoadGraphDir(const fs::path& dir) {
  auto vocab = LoadVocabulary(dir);
  auto triples = LoadTripleSet(dir / "triples.tsv", *vocab);
  std::vector<Triple> secret;
  if (fs::exists(dir / "private.tsv")) {
    secret = LoadTripleSet(dir / "private.tsv", *vocab);
  }
  return KnowledgeGraph(std::move(vocab), std::move(triples), std::move(secret));
}

// `source` is "toy", "synthetic" (needs a seed), a graph directory, or a
// triple file (needs a schema).
KnowledgeGraph ResolveGraph(const std::string& source,
                            const std::optional<std::string>& schema,
                            const std::optional<std::uint64_t>& seed) {
  if (source == "toy") return ToyGraph();
  if (source == "synthetic") {
    if (!seed) throw InvalidArgument("--graph synthetic needs --seed");
    return SyntheticGraph({}, *seed);
  }
  if (fs::is_directory(source)) return LoadGraphDir(source);
  if (!schema) {
    throw InvalidArgument("--graph " + source +
                          " is a triple file and needs --schema");
  }
  return LoadTriples(source, LoadSchema(*schema));
}

std::vector<QueryType> ResolveTypes(const std::string& name) {
  if (name == "all") return {kBenchmarkTypes.begin(), kBenchmarkTypes.end()};
  const auto t = ParseType(name);
  if (!t || *t == QueryType::kOther) {
    throw InvalidArgument("unknown query type '" + name + "'");
  }
  return {*t};
}

std::vector<Split> ResolveRoles(const std::string& name) {
  if (name == "all") return {kSplits.begin(), kSplits.end()};
  const auto s = ParseSplit(name);
  if (!s) throw InvalidArgument("unknown split '" + name + "'");
  return {*s};
}

// All query files of `role` present in `dir`, in type order.
std::vector<BenchmarkQuery> LoadQueries(const fs::path& dir, Split role,
                                        const Vocabulary& vocab) {
  std::vector<BenchmarkQuery> out;
  for (QueryType t : kBenchmarkTypes) {
    const fs::path file = dir / BenchmarkFileName(role, t);
    if (!fs::exists(file)) continue;
    auto part = LoadBenchmark(file, vocab);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  if (out.empty()) {
    throw NotFound("no " + std::string(SplitName(role)) + "_*.tsv query files in " +
                   dir.string());
  }
  return out;
}

template <typename F>
void WriteFile(const fs::path& path, F&& write) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write(out);
}

// ---------------------------------------------------------------------------
// Option helpers. Every option can also be set through NGDB_<NAME>, where
// NAME is the long flag upper-cased with '-' replaced by '_'.

template <typename T>
CLI::Option* Flag(CLI::App* app, const std::string& name, T& target,
                  const std::string& help) {
  std::string env = "NGDB_";
  for (char c : name) {
    env += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  }
  return app->add_option("--" + name, target, help)->envname(env);
}

struct Common {
  std::string out;
  std::optional<std::uint64_t> seed;
};

// ---------------------------------------------------------------------------
// Commands.

struct IngestArgs {
  Common common;
  std::string graph;
  std::optional<std::string> schema;
};

int Ingest(const IngestArgs& a, const CLI::App& app) {
  const KnowledgeGraph g = ResolveGraph(a.graph, a.schema, a.common.seed);
  Manifest m("ingest", app);
  if (a.common.seed) m.Seed("graph", *a.common.seed);
  m.Input("graph", a.graph);
  if (a.schema) m.Input("schema", *a.schema);
  SaveGraph(a.common.out, g);
  m.Write(a.common.out);
  std::cout << "vertices\t" << g.num_vertices() << "\nrelations\t"
            << g.num_relations() << "\ntriples\t" << g.num_triples()
            << "\nattribute_triples\t" << g.AttributeTriples().size()
            << "\nprivate_triples\t" << g.private_triples().size() << '\n';
  return 0;
}

struct PrivatizeArgs {
  Common common;
  std::string graph;
  std::optional<std::string> schema;
  std::size_t n_private = 0;
};

int Privatize(const PrivatizeArgs& a, const CLI::App& app) {
  const KnowledgeGraph g = ResolveGraph(a.graph, a.schema, a.common.seed);
  const auto secret = SamplePrivateEdges(g, a.n_private, *a.common.seed);
  const KnowledgeGraph marked = MarkPrivate(g, secret);
  Manifest m("privatize", app);
  m.Seed("privatize", *a.common.seed);
  m.Input("graph", a.graph);
  SaveGraph(a.common.out, marked);
  m.Write(a.common.out);
  std::cout << "private_triples\t" << secret.size() << '\n';
  return 0;
}

struct SplitArgs {
  Common common;
  std::string graph;
  std::optional<std::string> schema;
};

int SplitCommand(const SplitArgs& a, const CLI::App& app) {
  const KnowledgeGraph g = ResolveGraph(a.graph, a.schema, a.common.seed);
  const GraphSplit split = SplitEdges(g, g.private_triples(), *a.common.seed);
  Manifest m("split", app);
  m.Seed("split", *a.common.seed);
  m.Input("graph", a.graph);
  SaveSplit(a.common.out, split);
  m.Write(a.common.out);
  for (Split s : kSplits) {
    std::cout << SplitName(s) << '\t' << BucketEdges(split, s).size() << '\n';
  }
  std::cout << "private\t" << split.private_triples.size() << '\n';
  return 0;
}

struct SampleArgs {
  Common common;
  std::string split;
  std::string qtype = "all";
  std::string role = "all";
  std::size_t n = 0;
  std::string mode = "relaxed";
  std::size_t retry_budget = 100;
};

int SampleCommand(const SampleArgs& a, const CLI::App& app) {
  const GraphSplit split = LoadSplit(a.split);
  SamplerOptions options;
  const auto mode = ParseMode(a.mode);
  if (!mode) throw InvalidArgument("unknown --mode '" + a.mode + "'");
  options.mode = *mode;
  options.retry_budget = a.retry_budget;
  Manifest m("sample-queries", app);
  m.Input("split", a.split);
  fs::create_directories(a.common.out);
  std::vector<std::pair<Split, BenchmarkStats>> stats;
  for (Split role : ResolveRoles(a.role)) {
    std::vector<BenchmarkQuery> all;
    for (QueryType t : ResolveTypes(a.qtype)) {
      // One stream per (role, type), so files do not depend on which other
      // files are generated in the same run.
      const std::uint64_t seed = DeriveSeed(
          *a.common.seed, 16 * static_cast<std::uint64_t>(role) +
                              static_cast<std::uint64_t>(t));
      m.Seed(BenchmarkFileName(role, t), seed);
      auto queries = SampleQueries(split, role, t, a.n, seed, options);
      WriteFile(fs::path(a.common.out) / BenchmarkFileName(role, t),
                [&](std::ostream& out) {
                  WriteBenchmark(out, queries, split.test.vocabulary());
                });
      all.insert(all.end(), queries.begin(), queries.end());
    }
    stats.emplace_back(role, Stats(all, role));
  }
  WriteFile(fs::path(a.common.out) / "stats.tsv",
            [&](std::ostream& out) { WriteStats(out, stats); });
  m.Write(a.common.out);
  WriteStats(std::cout, stats);
  return 0;
}

struct TrainArgs {
  Common common;
  std::string split;
  std::string queries;
  std::optional<std::string> config;
  std::optional<std::string> model;
  std::optional<double> beta;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> particles;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> batch_size;
  std::optional<double> learning_rate;
  std::optional<std::string> optimizer;
  std::optional<std::size_t> negatives;
  std::optional<std::size_t> privacy_sample;
  std::optional<std::string> privacy_direction;
  std::optional<double> max_norm;
};

TrainConfig BuildTrainConfig(const TrainArgs& a) {
  TrainConfig c;
  if (a.config) {
    std::ifstream in(*a.config);
    if (!in) throw NotFound("cannot open " + *a.config);
    c = ReadTrainConfig(in);
  }
  if (a.model) {
    const auto kind = ParseModel(*a.model);
    if (!kind) throw InvalidArgument("unknown --model '" + *a.model + "'");
    c.model.kind = *kind;
  }
  if (a.beta) c.beta = *a.beta;
  if (a.dim) c.model.dim = *a.dim;
  if (a.particles) c.model.particles = *a.particles;
  if (a.epochs) c.epochs = *a.epochs;
  if (a.batch_size) c.batch_size = *a.batch_size;
  if (a.learning_rate) c.optimizer.learning_rate = *a.learning_rate;
  if (a.optimizer) {
    if (*a.optimizer == "adam") {
      c.optimizer.kind = OptimizerConfig::Kind::kAdam;
    } else if (*a.optimizer == "sgd") {
      c.optimizer.kind = OptimizerConfig::Kind::kSgd;
    } else {
      throw InvalidArgument("unknown --optimizer '" + *a.optimizer + "'");
    }
  }
  if (a.negatives) c.negative_samples = *a.negatives;
  if (a.privacy_sample) c.privacy_sample = *a.privacy_sample;
  if (a.privacy_direction) {
    const auto d = ParseDirection(*a.privacy_direction);
    if (!d) {
      throw InvalidArgument("unknown --privacy-direction '" +
                            *a.privacy_direction + "'");
    }
    c.privacy_direction = *d;
  }
  if (a.max_norm) c.entity_max_norm = *a.max_norm;
  c.seed = *a.common.seed;
  ValidateConfig(c);
  return c;
}

int TrainCommand(const TrainArgs& a, const CLI::App& app) {
  const TrainConfig config = BuildTrainConfig(a);
  const GraphSplit split = LoadSplit(a.split);
  const Vocabulary& vocab = split.test.vocabulary();
  const auto queries = LoadQueries(a.queries, Split::kTrain, vocab);
  const auto examples = TrainingExamples(queries);
  Manifest m("train", app);
  m.Seed("train", config.seed);
  m.Input("split", a.split);
  m.Input("queries", a.queries);
  if (a.config) m.Input("config", *a.config);

  Encoder encoder =
      InitialEncoder(config, vocab.num_vertices(), vocab.num_relations());
  const auto trace = Train(encoder, examples, split.private_triples, config,
                           [](const EpochLoss& l, const Encoder&) {
                             std::cerr << "epoch " << l.epoch << " L_u "
                                       << l.public_loss << " L_p "
                                       << l.privacy_loss << '\n';
                           });
  const fs::path out = a.common.out;
  SaveModel(out / "model", encoder);
  WriteFile(out / "train_config.json",
            [&](std::ostream& o) { WriteTrainConfig(o, config); });
  WriteFile(out / "loss.csv",
            [&](std::ostream& o) { WriteLossTrace(o, trace); });
  m.Write(out);
  const EpochLoss& last = trace.back();
  std::cout << "examples\t" << examples.size() << "\nfinal_L_u\t"
            << last.public_loss << "\nfinal_L_p\t" << last.privacy_loss
            << "\nfinal_L\t" << last.total << '\n';
  return 0;
}

struct EvalArgs {
  Common common;
  std::string model;
  std::string split;
  std::string queries;
  std::string protection = "none";
  std::optional<double> sigma;
  std::optional<std::string> calibrate_to;
  std::optional<std::string> baseline;
  std::string label = "model";
};

// A model argument may be the train output directory or its model/ subdir.
fs::path ModelDir(const fs::path& p) {
  return fs::exists(p / "model.json") ? p : p / "model";
}

int EvalCommand(const EvalArgs& a, const CLI::App& app) {
  const auto kind = ParseProtection(a.protection);
  if (!kind) throw InvalidArgument("unknown --protection '" + a.protection + "'");
  const Encoder encoder = LoadModel(ModelDir(a.model));
  const GraphSplit split = LoadSplit(a.split);
  const Vocabulary& vocab = split.test.vocabulary();
  const auto queries = LoadQueries(a.queries, Split::kTest, vocab);
  Manifest m("eval", app);
  m.Input("model", ModelDir(a.model));
  m.Input("split", a.split);
  m.Input("queries", a.queries);

  Protection protection;
  protection.kind = *kind;
  Json calibration;
  if (*kind == Protection::Kind::kNoise) {
    if (!a.common.seed) throw InvalidArgument("--protection noise needs --seed");
    protection.noise.seed = *a.common.seed;
    m.Seed("noise", *a.common.seed);
    if (a.calibrate_to) {
      m.Input("calibrate_to", *a.calibrate_to);
      std::ifstream in(*a.calibrate_to);
      if (!in) throw NotFound("cannot open " + *a.calibrate_to);
      const double target =
          ReadReportJson(in).All(AnswerClass::kPublic).mrr;
      const CalibrationResult r =
          CalibrateSigma(encoder, vocab, queries, target, *a.common.seed);
      protection.noise.sigma = r.sigma;
      calibration = {{"target_public_mrr", target},
                     {"sigma", r.sigma},
                     {"evaluations", r.evaluations},
                     {"converged", r.converged}};
      std::cerr << "calibrated sigma " << r.sigma
                << (r.converged ? "" : " (not converged)") << '\n';
    } else if (a.sigma) {
      protection.noise.sigma = *a.sigma;
    } else {
      throw InvalidArgument("--protection noise needs --sigma or --calibrate-to");
    }
  }
  const EvalReport report = EvaluateModel(encoder, vocab, queries, protection);
  std::optional<EvalReport> baseline;
  if (a.baseline) {
    m.Input("baseline", *a.baseline);
    std::ifstream in(*a.baseline);
    if (!in) throw NotFound("cannot open " + *a.baseline);
    baseline = ReadReportJson(in);
  }
  const fs::path out = a.common.out;
  fs::create_directories(out);
  WriteFile(out / "report.json",
            [&](std::ostream& o) { WriteReportJson(o, report); });
  const std::pair<std::string, EvalReport> rows[] = {{a.label, report}};
  WriteFile(out / "summary.tsv",
            [&](std::ostream& o) { WriteSummaryTsv(o, rows); });
  WriteFile(out / "per_type.tsv", [&](std::ostream& o) {
    WritePerTypeTsv(o, report, baseline ? &*baseline : nullptr);
  });
  WriteFile(out / "ranks.tsv",
            [&](std::ostream& o) { WriteRanksTsv(o, report); });
  if (!calibration.is_null()) {
    WriteFile(out / "calibration.json",
              [&](std::ostream& o) { o << calibration.dump(2) << '\n'; });
  }
  m.Write(out);
  WriteSummaryTsv(std::cout, rows);
  return 0;
}

struct AuditArgs {
  std::string graph;
  std::optional<std::string> schema;
  std::optional<std::uint64_t> seed;
  std::string query;
  std::string mode = "relaxed";
};

int AuditCommand(const AuditArgs& a) {
  const KnowledgeGraph g = ResolveGraph(a.graph, a.schema, a.seed);
  const auto mode = ParseMode(a.mode);
  if (!mode) throw InvalidArgument("unknown --mode '" + a.mode + "'");
  const Query q = ParseQuery(a.query, g.vocabulary());
  const TaggedAnswerSet tagged = EvaluateTagged(g, q, *mode);
  for (VertexId v : tagged.All()) {
    const bool is_private =
        std::binary_search(tagged.private_members.begin(),
                           tagged.private_members.end(), v);
    std::cout << g.vocabulary().VertexName(v) << '\t'
              << (is_private ? "private" : "public") << '\n';
  }
  return 0;
}

struct ReportArgs {
  std::string out;
  std::vector<std::string> reports;
  std::vector<std::string> labels;
  std::optional<std::string> baseline;
};

int ReportCommand(const ReportArgs& a, const CLI::App& app) {
  if (!a.labels.empty() && a.labels.size() != a.reports.size()) {
    throw InvalidArgument("--labels needs one label per report");
  }
  Manifest m("report", app);
  std::vector<std::pair<std::string, EvalReport>> rows;
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    fs::path path = a.reports[i];
    if (fs::is_directory(path)) path /= "report.json";
    std::ifstream in(path);
    if (!in) throw NotFound("cannot open " + path.string());
    m.Input("report" + std::to_string(i), path);
    rows.emplace_back(a.labels.empty() ? path.parent_path().filename().string()
                                       : a.labels[i],
                      ReadReportJson(in));
  }
  std::optional<EvalReport> baseline;
  if (a.baseline) {
    fs::path path = *a.baseline;
    if (fs::is_directory(path)) path /= "report.json";
    std::ifstream in(path);
    if (!in) throw NotFound("cannot open " + path.string());
    baseline = ReadReportJson(in);
  }
  const fs::path out = a.out;
  fs::create_directories(out);
  WriteFile(out / "summary.tsv",
            [&](std::ostream& o) { WriteSummaryTsv(o, rows); });
  for (const auto& [label, report] : rows) {
    WriteFile(out / ("per_type_" + label + ".tsv"), [&](std::ostream& o) {
      WritePerTypeTsv(o, report, baseline ? &*baseline : nullptr);
    });
  }
  m.Write(out);
  WriteSummaryTsv(std::cout, rows);
  return 0;
}

int Run(int argc, char** argv) {
  CLI::App app{"ngdb: privacy-aware neural graph database pipeline"};
  app.set_version_flag("--version", std::string(NGDB_VERSION));
  app.require_subcommand(1);
  std::function<int()> action;

  auto* ingest = app.add_subcommand(
      "ingest", "Load a graph (triple file, toy or synthetic) into a graph directory");
  IngestArgs ingest_args;
  Flag(ingest, "graph", ingest_args.graph, "toy, synthetic, graph dir or triple file")
      ->required();
  Flag(ingest, "schema", ingest_args.schema, "schema file for a triple file");
  Flag(ingest, "seed", ingest_args.common.seed, "seed for --graph synthetic");
  Flag(ingest, "out", ingest_args.common.out, "output graph directory")->required();
  ingest->callback([&] { action = [&] { return Ingest(ingest_args, *ingest); }; });

  auto* privatize = app.add_subcommand(
      "privatize", "Mark a seeded sample of attribute triples private");
  PrivatizeArgs privatize_args;
  Flag(privatize, "graph", privatize_args.graph, "graph to privatize")->required();
  Flag(privatize, "schema", privatize_args.schema, "schema file for a triple file");
  Flag(privatize, "n-private", privatize_args.n_private,
       "number of private attribute triples")
      ->required();
  Flag(privatize, "seed", privatize_args.common.seed, "sampling seed")->required();
  Flag(privatize, "out", privatize_args.common.out, "output graph directory")
      ->required();
  privatize->callback(
      [&] { action = [&] { return Privatize(privatize_args, *privatize); }; });

  auto* split = app.add_subcommand(
      "split", "Split public edges 8:1:1 into train/valid/test graphs");
  SplitArgs split_args;
  Flag(split, "graph", split_args.graph, "privatized graph")->required();
  Flag(split, "schema", split_args.schema, "schema file for a triple file");
  Flag(split, "seed", split_args.common.seed, "shuffle seed")->required();
  Flag(split, "out", split_args.common.out, "output split directory")->required();
  split->callback([&] { action = [&] { return SplitCommand(split_args, *split); }; });

  auto* sample = app.add_subcommand(
      "sample-queries", "Sample benchmark queries with tagged answers");
  SampleArgs sample_args;
  Flag(sample, "split", sample_args.split, "split directory")->required();
  Flag(sample, "qtype", sample_args.qtype, "query type or 'all'")
      ->capture_default_str();
  Flag(sample, "role", sample_args.role, "train, valid, test or 'all'")
      ->capture_default_str();
  Flag(sample, "n", sample_args.n, "queries per (role, type)")->required();
  Flag(sample, "mode", sample_args.mode, "tagging mode: relaxed or strict")
      ->capture_default_str();
  Flag(sample, "retry-budget", sample_args.retry_budget,
       "attempts per emitted query")
      ->capture_default_str();
  Flag(sample, "seed", sample_args.common.seed, "sampling seed")->required();
  Flag(sample, "out", sample_args.common.out, "output query directory")->required();
  sample->callback(
      [&] { action = [&] { return SampleCommand(sample_args, *sample); }; });

  auto* train = app.add_subcommand(
      "train", "Train a query encoder with the privacy objective");
  TrainArgs train_args;
  Flag(train, "split", train_args.split, "split directory")->required();
  Flag(train, "queries", train_args.queries, "query directory with train_*.tsv")
      ->required();
  Flag(train, "config", train_args.config, "JSON training config");
  Flag(train, "model", train_args.model, "gqe, q2b or q2p");
  Flag(train, "beta", train_args.beta, "privacy coefficient");
  Flag(train, "dim", train_args.dim, "embedding dimension");
  Flag(train, "particles", train_args.particles, "Q2P particles");
  Flag(train, "epochs", train_args.epochs, "training epochs");
  Flag(train, "batch-size", train_args.batch_size, "queries per step");
  Flag(train, "learning-rate", train_args.learning_rate, "optimizer step size");
  Flag(train, "optimizer", train_args.optimizer, "adam or sgd");
  Flag(train, "negatives", train_args.negatives,
       "sampled negatives per softmax (0 = all vertices)");
  Flag(train, "privacy-sample", train_args.privacy_sample,
       "private triples per step (0 = all)");
  Flag(train, "privacy-direction", train_args.privacy_direction,
       "reverse or both");
  Flag(train, "max-norm", train_args.max_norm,
       "entity row L2 bound (0 = none)");
  Flag(train, "seed", train_args.common.seed, "training seed")->required();
  Flag(train, "out", train_args.common.out, "output run directory")->required();
  train->callback([&] { action = [&] { return TrainCommand(train_args, *train); }; });

  auto* eval = app.add_subcommand(
      "eval", "Rank public and private test answers of a trained model");
  EvalArgs eval_args;
  Flag(eval, "model", eval_args.model, "train output or model directory")
      ->required();
  Flag(eval, "split", eval_args.split, "split directory")->required();
  Flag(eval, "queries", eval_args.queries, "query directory with test_*.tsv")
      ->required();
  Flag(eval, "protection", eval_args.protection, "none or noise")
      ->capture_default_str();
  Flag(eval, "sigma", eval_args.sigma, "noise scale");
  Flag(eval, "calibrate-to", eval_args.calibrate_to,
       "report whose public MRR the noise should match");
  Flag(eval, "baseline", eval_args.baseline,
       "report for percentage-of-baseline columns");
  Flag(eval, "label", eval_args.label, "row label in summary.tsv")
      ->capture_default_str();
  Flag(eval, "seed", eval_args.common.seed, "noise seed")->required();
  Flag(eval, "out", eval_args.common.out, "output directory")->required();
  eval->callback([&] { action = [&] { return EvalCommand(eval_args, *eval); }; });

  auto* audit = app.add_subcommand(
      "audit", "Evaluate a query symbolically and tag each answer");
  AuditArgs audit_args;
  Flag(audit, "graph", audit_args.graph, "toy, synthetic, graph dir or triple file")
      ->required();
  Flag(audit, "schema", audit_args.schema, "schema file for a triple file");
  Flag(audit, "seed", audit_args.seed, "seed for --graph synthetic");
  Flag(audit, "query", audit_args.query, "s-expression query")->required();
  Flag(audit, "mode", audit_args.mode, "relaxed or strict")->capture_default_str();
  audit->callback([&] { action = [&] { return AuditCommand(audit_args); }; });

  auto* report = app.add_subcommand(
      "report", "Combine evaluation reports into summary tables");
  ReportArgs report_args;
  Flag(report, "reports", report_args.reports, "report.json files or eval dirs")
      ->required();
  Flag(report, "labels", report_args.labels, "one label per report");
  Flag(report, "baseline", report_args.baseline,
       "report for percentage-of-baseline columns");
  Flag(report, "out", report_args.out, "output directory")->required();
  report->callback(
      [&] { action = [&] { return ReportCommand(report_args, *report); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "ngdb: " << e.what() << '\n';
    return kModuleError;
  }
}

}  // namespace
}  // namespace ngdb::cli

int main(int argc, char** argv) { return ngdb::cli::Run(argc, argv); }
