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

#include "ngdb/encoders/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "ngdb/common/error.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/numerics/ops.hpp"
#include "ngdb/query/dnf.hpp"

namespace ngdb {
namespace {

enum class Init { kZero, kXavier, kEmbedding, kAbsEmbedding };

struct ParamSpec {
  std::string name;
  std::size_t rows;
  std::size_t cols;
  Init init;
};

// Operator-network indices into Ids::net.
namespace gqe {
enum { kFfnW, kFfnB, kOutW, kOutB };
}
namespace q2b {
enum { kAttW1, kAttB1, kAttW2, kAttB2, kSetW1, kSetB1, kSetW2, kSetB2 };
}
namespace q2p {
enum {
  kParticleOffset,
  kWz, kUz, kBz,
  kWr, kUr, kBr,
  kWh, kUh, kBh,
  kPq, kPk, kPv,
  kIq, kIk, kIv,
  kMlpW1, kMlpB1, kMlpW2, kMlpB2,
};
}

std::vector<ParamSpec> NetSpecs(const ModelConfig& c) {
  const std::size_t d = c.dim;
  switch (c.kind) {
    case ModelKind::kGqe:
      return {{"gqe.ffn.weight", d, d, Init::kXavier},
              {"gqe.ffn.bias", 1, d, Init::kZero},
              {"gqe.out.weight", d, d, Init::kXavier},
              {"gqe.out.bias", 1, d, Init::kZero}};
    case ModelKind::kQ2b:
      return {{"q2b.attention.w1", 2 * d, d, Init::kXavier},
              {"q2b.attention.b1", 1, d, Init::kZero},
              {"q2b.attention.w2", d, 1, Init::kXavier},
              {"q2b.attention.b2", 1, 1, Init::kZero},
              {"q2b.deepsets.w1", 2 * d, d, Init::kXavier},
              {"q2b.deepsets.b1", 1, d, Init::kZero},
              {"q2b.deepsets.w2", d, d, Init::kXavier},
              {"q2b.deepsets.b2", 1, d, Init::kZero}};
    case ModelKind::kQ2p:
      return {{"q2p.particle_offset", c.particles, d, Init::kEmbedding},
              {"q2p.proj.wz", d, d, Init::kXavier},
              {"q2p.proj.uz", d, d, Init::kXavier},
              {"q2p.proj.bz", 1, d, Init::kZero},
              {"q2p.proj.wr", d, d, Init::kXavier},
              {"q2p.proj.ur", d, d, Init::kXavier},
              {"q2p.proj.br", 1, d, Init::kZero},
              {"q2p.proj.wh", d, d, Init::kXavier},
              {"q2p.proj.uh", d, d, Init::kXavier},
              {"q2p.proj.bh", 1, d, Init::kZero},
              {"q2p.proj.wq", d, d, Init::kXavier},
              {"q2p.proj.wk", d, d, Init::kXavier},
              {"q2p.proj.wv", d, d, Init::kXavier},
              {"q2p.inter.wq", d, d, Init::kXavier},
              {"q2p.inter.wk", d, d, Init::kXavier},
              {"q2p.inter.wv", d, d, Init::kXavier},
              {"q2p.inter.mlp.w1", d, d, Init::kXavier},
              {"q2p.inter.mlp.b1", 1, d, Init::kZero},
              {"q2p.inter.mlp.w2", d, d, Init::kXavier},
              {"q2p.inter.mlp.b2", 1, d, Init::kZero}};
  }
  return {};
}

std::vector<ParamSpec> AllSpecs(const ModelConfig& c, std::size_t vertices,
                                std::size_t relations) {
  std::vector<ParamSpec> specs = {
      {"entity", vertices, c.dim, Init::kEmbedding},
      {"relation", 2 * relations, c.dim, Init::kEmbedding}};
  if (c.kind == ModelKind::kQ2b) {
    specs.push_back(
        {"relation_offset", 2 * relations, c.dim, Init::kAbsEmbedding});
  }
  for (auto& s : NetSpecs(c)) specs.push_back(std::move(s));
  return specs;
}

NdArray Initialize(const ParamSpec& spec, std::size_t dim, Rng& rng) {
  NdArray a = NdArray::Matrix(spec.rows, spec.cols);
  double bound = 0.0;
  switch (spec.init) {
    case Init::kZero:
      return a;
    case Init::kXavier:
      bound = std::sqrt(6.0 / static_cast<double>(spec.rows + spec.cols));
      break;
    case Init::kEmbedding:
    case Init::kAbsEmbedding:
      bound = 1.0 / std::sqrt(static_cast<double>(dim));
      break;
  }
  for (double& x : a.data()) {
    x = rng.Uniform(-bound, bound);
    if (spec.init == Init::kAbsEmbedding) x = std::abs(x);
  }
  return a;
}

void CheckConfig(const ModelConfig& c) {
  if (c.dim == 0) throw InvalidArgument("model dimension must be positive");
  if (c.kind == ModelKind::kQ2p && c.particles == 0) {
    throw InvalidArgument("Q2P needs at least one particle");
  }
  if (!(c.alpha >= 0.0) || !std::isfinite(c.alpha)) {
    throw InvalidArgument("alpha must be a finite non-negative number");
  }
}

template <typename T>
const T& Expect(const QueryEmbedding& q, const char* model) {
  if (const T* p = std::get_if<T>(&q)) return *p;
  throw InvalidArgument(std::string("embedding variant does not match ") +
                        model + " model");
}

Var Linear(Var x, Var w, Var b) { return ad::Add(ad::MatMul(x, w), b); }

// softmax((x wq)(x wk)^T / sqrt(d)) (x wv), particles as rows.
Var SelfAttention(Var x, Var wq, Var wk, Var wv) {
  return ad::Attention(ad::MatMul(x, wq), ad::MatMul(x, wk),
                       ad::MatMul(x, wv));
}

}  // namespace

std::string_view ModelName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGqe:
      return "gqe";
    case ModelKind::kQ2b:
      return "q2b";
    case ModelKind::kQ2p:
      return "q2p";
  }
  return "?";
}

std::optional<ModelKind> ParseModel(std::string_view name) {
  for (ModelKind k : {ModelKind::kGqe, ModelKind::kQ2b, ModelKind::kQ2p}) {
    if (ModelName(k) == name) return k;
  }
  return std::nullopt;
}

Encoder::Encoder(ModelConfig config, std::size_t num_vertices,
                 std::size_t num_relations, std::uint64_t seed)
    : config_(config),
      num_vertices_(num_vertices),
      num_relations_(num_relations) {
  CheckConfig(config_);
  Register(params_, seed);
  Bind();
}

Encoder::Encoder(ModelConfig config, std::size_t num_vertices,
                 std::size_t num_relations, ParameterStore parameters)
    : config_(config),
      num_vertices_(num_vertices),
      num_relations_(num_relations),
      params_(std::move(parameters)) {
  CheckConfig(config_);
  const auto specs = AllSpecs(config_, num_vertices_, num_relations_);
  if (params_.size() != specs.size()) {
    throw InvalidArgument("parameter store has " +
                          std::to_string(params_.size()) +
                          " entries, model expects " +
                          std::to_string(specs.size()));
  }
  for (const auto& s : specs) {
    const auto id = params_.Find(s.name);
    if (!id) throw InvalidArgument("missing parameter " + s.name);
    const NdArray& v = params_.value(*id);
    if (v.rank() != 2 || v.rows() != s.rows || v.cols() != s.cols) {
      throw InvalidArgument("parameter " + s.name + " has shape " +
                            v.ShapeString());
    }
    params_.set_non_negative(*id, s.init == Init::kAbsEmbedding);
  }
  Bind();
}

void Encoder::Register(ParameterStore& store, std::uint64_t seed) const {
  Rng rng(seed);
  for (const auto& s : AllSpecs(config_, num_vertices_, num_relations_)) {
    store.Add(s.name, Initialize(s, config_.dim, rng),
              s.init == Init::kAbsEmbedding);
  }
}

void Encoder::Bind() {
  ids_.entity = params_.Id("entity");
  ids_.relation = params_.Id("relation");
  if (config_.kind == ModelKind::kQ2b) {
    ids_.relation_offset = params_.Id("relation_offset");
  }
  ids_.net.clear();
  for (const auto& s : NetSpecs(config_)) ids_.net.push_back(params_.Id(s.name));
}

std::size_t Encoder::RelationRow(RelationId r, Direction dir) const {
  if (Index(r) >= num_relations_) {
    throw NotFound("relation id " + std::to_string(Index(r)) +
                   " outside the model's tables");
  }
  return 2 * Index(r) + (dir == Direction::kBackward ? 1 : 0);
}

Var Encoder::Param(Tape& tape, std::size_t net_index) const {
  return tape.Parameter(params_, ids_.net.at(net_index));
}

Var Encoder::EntityRow(Tape& tape, VertexId v) const {
  if (Index(v) >= num_vertices_) {
    throw NotFound("vertex id " + std::to_string(Index(v)) +
                   " outside the model's tables");
  }
  const std::size_t row[] = {Index(v)};
  return ad::GatherRows(tape.Parameter(params_, ids_.entity), row);
}

QueryEmbedding Encoder::Anchor(Tape& tape, VertexId v) const {
  const Var e = EntityRow(tape, v);
  switch (config_.kind) {
    case ModelKind::kGqe:
      return VectorEmbedding{e};
    case ModelKind::kQ2b:
      return BoxEmbedding{e, tape.Constant(NdArray::Matrix(1, config_.dim))};
    case ModelKind::kQ2p:
      return ParticleEmbedding{ad::Add(e, Param(tape, q2p::kParticleOffset))};
  }
  throw InvalidArgument("unknown model kind");
}

QueryEmbedding Encoder::Project(Tape& tape, const QueryEmbedding& q,
                                RelationId r, Direction dir) const {
  const std::size_t row[] = {RelationRow(r, dir)};
  const Var e_r = ad::GatherRows(tape.Parameter(params_, ids_.relation), row);
  switch (config_.kind) {
    case ModelKind::kGqe: {
      const auto& v = Expect<VectorEmbedding>(q, "GQE");
      return VectorEmbedding{ad::Add(v.vector, e_r)};
    }
    case ModelKind::kQ2b: {
      const auto& b = Expect<BoxEmbedding>(q, "Q2B");
      const Var o_r = ad::GatherRows(
          tape.Parameter(params_, ids_.relation_offset), row);
      return BoxEmbedding{ad::Add(b.center, e_r), ad::Add(b.offset, o_r)};
    }
    case ModelKind::kQ2p: {
      const Var p = Expect<ParticleEmbedding>(q, "Q2P").particles;
      const Var z = ad::Sigmoid(ad::Add(
          ad::Add(ad::MatMul(e_r, Param(tape, q2p::kWz)),
                  ad::MatMul(p, Param(tape, q2p::kUz))),
          Param(tape, q2p::kBz)));
      const Var reset = ad::Sigmoid(ad::Add(
          ad::Add(ad::MatMul(e_r, Param(tape, q2p::kWr)),
                  ad::MatMul(p, Param(tape, q2p::kUr))),
          Param(tape, q2p::kBr)));
      const Var t = ad::Tanh(ad::Add(
          ad::Add(ad::MatMul(e_r, Param(tape, q2p::kWh)),
                  ad::MatMul(ad::Mul(reset, p), Param(tape, q2p::kUh))),
          Param(tape, q2p::kBh)));
      // (1 - z) * p + z * t
      const Var a = ad::Add(p, ad::Mul(z, ad::Sub(t, p)));
      return ParticleEmbedding{SelfAttention(a, Param(tape, q2p::kPq),
                                             Param(tape, q2p::kPk),
                                             Param(tape, q2p::kPv))};
    }
  }
  throw InvalidArgument("unknown model kind");
}

QueryEmbedding Encoder::Intersect(
    Tape& tape, std::span<const QueryEmbedding> inputs) const {
  if (inputs.size() < 2) {
    throw InvalidArgument("intersection needs at least two inputs");
  }
  const double inv_n = 1.0 / static_cast<double>(inputs.size());
  switch (config_.kind) {
    case ModelKind::kGqe: {
      std::vector<Var> hidden;
      for (const auto& q : inputs) {
        hidden.push_back(ad::Relu(Linear(Expect<VectorEmbedding>(q, "GQE").vector,
                                         Param(tape, gqe::kFfnW),
                                         Param(tape, gqe::kFfnB))));
      }
      const Var pooled = ad::ReduceMean(ad::ConcatRows(hidden), 0);
      return VectorEmbedding{
          Linear(pooled, Param(tape, gqe::kOutW), Param(tape, gqe::kOutB))};
    }
    case ModelKind::kQ2b: {
      std::vector<Var> centers, offsets, boxes;
      for (const auto& q : inputs) {
        const auto& b = Expect<BoxEmbedding>(q, "Q2B");
        centers.push_back(b.center);
        offsets.push_back(b.offset);
        const Var both[] = {b.center, b.offset};
        boxes.push_back(ad::ConcatCols(both));
      }
      const Var x = ad::ConcatRows(boxes);  // n x 2d
      // One attention weight per input box.
      const Var logits = Linear(
          ad::Relu(Linear(x, Param(tape, q2b::kAttW1), Param(tape, q2b::kAttB1))),
          Param(tape, q2b::kAttW2), Param(tape, q2b::kAttB2));
      const Var weights = ad::Softmax(logits, 0);  // n x 1
      const Var center =
          ad::ReduceSum(ad::Mul(weights, ad::ConcatRows(centers)), 0);
      const Var set = ad::ReduceMean(
          ad::Relu(Linear(x, Param(tape, q2b::kSetW1), Param(tape, q2b::kSetB1))),
          0);
      const Var gate = ad::Sigmoid(
          Linear(set, Param(tape, q2b::kSetW2), Param(tape, q2b::kSetB2)));
      const Var offset =
          ad::Mul(ad::ReduceMin(ad::ConcatRows(offsets), 0), gate);
      return BoxEmbedding{center, offset};
    }
    case ModelKind::kQ2p: {
      std::vector<Var> parts;
      for (const auto& q : inputs) {
        parts.push_back(Expect<ParticleEmbedding>(q, "Q2P").particles);
      }
      const Var merged = ad::ConcatRows(parts);  // nk x d
      const Var attended =
          SelfAttention(merged, Param(tape, q2p::kIq), Param(tape, q2p::kIk),
                        Param(tape, q2p::kIv));
      const Var moved = Linear(
          ad::Relu(Linear(attended, Param(tape, q2p::kMlpW1),
                          Param(tape, q2p::kMlpB1))),
          Param(tape, q2p::kMlpW2), Param(tape, q2p::kMlpB2));
      // Average particle slot j across inputs to keep k particles.
      const std::size_t k = config_.particles;
      Var sum = ad::SliceRows(moved, 0, k);
      for (std::size_t n = 1; n < inputs.size(); ++n) {
        sum = ad::Add(sum, ad::SliceRows(moved, n * k, k));
      }
      return ParticleEmbedding{ad::Scale(sum, inv_n)};
    }
  }
  throw InvalidArgument("unknown model kind");
}

QueryEmbedding Encoder::EncodeConjunctive(Tape& tape, const Query& q) const {
  if (const auto* a = As<AnchorNode>(q)) return Anchor(tape, a->vertex);
  if (const auto* p = As<ProjectionNode>(q)) {
    return Project(tape, EncodeConjunctive(tape, p->child), p->relation,
                   p->direction);
  }
  if (const auto* i = As<IntersectionNode>(q)) {
    std::vector<QueryEmbedding> inputs;
    for (const Query& c : i->children) {
      inputs.push_back(EncodeConjunctive(tape, c));
    }
    return Intersect(tape, inputs);
  }
  throw InvalidArgument("EncodeConjunctive: query contains a union");
}

std::vector<QueryEmbedding> Encoder::Encode(Tape& tape, const Query& q) const {
  std::vector<QueryEmbedding> out;
  for (const Query& d : ToDnf(q).disjuncts) {
    out.push_back(EncodeConjunctive(tape, d));
  }
  return out;
}

Var Encoder::ScoresAgainst(const QueryEmbedding& q,
                           Var entities) const {
  switch (config_.kind) {
    case ModelKind::kGqe:
      return ad::Neg(
          ad::PairwiseL2(Expect<VectorEmbedding>(q, "GQE").vector, entities));
    case ModelKind::kQ2b: {
      const auto& b = Expect<BoxEmbedding>(q, "Q2B");
      return ad::Neg(ad::BoxDistance(b.center, b.offset, entities,
                                     config_.alpha));
    }
    case ModelKind::kQ2p:
      return ad::Neg(ad::ReduceMin(
          ad::PairwiseL2(Expect<ParticleEmbedding>(q, "Q2P").particles,
                         entities),
          0));
  }
  throw InvalidArgument("unknown model kind");
}

Var Encoder::Scores(Tape& tape, const QueryEmbedding& q) const {
  return ScoresAgainst(q, tape.Parameter(params_, ids_.entity));
}

Var Encoder::Scores(Tape& tape,
                    std::span<const QueryEmbedding> disjuncts) const {
  if (disjuncts.empty()) throw InvalidArgument("no disjunct embeddings");
  if (disjuncts.size() == 1) return Scores(tape, disjuncts.front());
  std::vector<Var> rows;
  for (const auto& q : disjuncts) rows.push_back(Scores(tape, q));
  return ad::ReduceMax(ad::ConcatRows(rows), 0);
}

Var Encoder::Scores(Tape& tape, std::span<const QueryEmbedding> disjuncts,
                    std::span<const VertexId> candidates) const {
  if (disjuncts.empty()) throw InvalidArgument("no disjunct embeddings");
  std::vector<std::size_t> rows;
  rows.reserve(candidates.size());
  for (VertexId v : candidates) {
    if (Index(v) >= num_vertices_) {
      throw NotFound("candidate vertex id " + std::to_string(Index(v)) +
                     " outside the model's tables");
    }
    rows.push_back(Index(v));
  }
  const Var entities =
      ad::GatherRows(tape.Parameter(params_, ids_.entity), rows);
  if (disjuncts.size() == 1) {
    return ScoresAgainst(disjuncts.front(), entities);
  }
  std::vector<Var> per;
  for (const auto& q : disjuncts) per.push_back(ScoresAgainst(q, entities));
  return ad::ReduceMax(ad::ConcatRows(per), 0);
}

std::vector<double> Encoder::ScoreAll(const Query& q) const {
  Tape tape(false);
  const auto disjuncts = Encode(tape, q);
  const auto data = Scores(tape, disjuncts).value().data();
  return {data.begin(), data.end()};
}

double Encoder::Score(const Query& q, VertexId v) const {
  Tape tape(false);
  const auto disjuncts = Encode(tape, q);
  const VertexId one[] = {v};
  return Scores(tape, disjuncts, one).value()[0];
}

double Encoder::Probability(const Query& q, VertexId v,
                            std::span<const VertexId> candidates) const {
  if (candidates.empty()) throw InvalidArgument("empty candidate set");
  const auto it = std::find(candidates.begin(), candidates.end(), v);
  if (it == candidates.end()) {
    throw InvalidArgument("target vertex is not among the candidates");
  }
  Tape tape(false);
  const auto disjuncts = Encode(tape, q);
  const Var p = ad::Softmax(Scores(tape, disjuncts, candidates), 1);
  return p.value()[static_cast<std::size_t>(it - candidates.begin())];
}

void SaveModel(const std::filesystem::path& dir, const Encoder& encoder) {
  std::filesystem::create_directories(dir);
  encoder.parameters().Save(dir / "params.txt");
  const ModelConfig& c = encoder.config();
  nlohmann::ordered_json j;
  j["format"] = "ngdb-model";
  j["version"] = 1;
  j["model"] = std::string(ModelName(c.kind));
  j["dim"] = c.dim;
  j["particles"] = c.particles;
  j["alpha"] = c.alpha;
  j["num_vertices"] = encoder.num_vertices();
  j["num_relations"] = encoder.num_relations();
  std::ofstream out(dir / "model.json");
  if (!out) throw Error("cannot write " + (dir / "model.json").string());
  out << j.dump(2) << '\n';
}

Encoder LoadModel(const std::filesystem::path& dir) {
  std::ifstream in(dir / "model.json");
  if (!in) throw NotFound("cannot open " + (dir / "model.json").string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model.json: " + std::string(e.what()), 0);
  }
  try {
    if (j.at("format") != "ngdb-model" || j.at("version") != 1) {
      throw InvalidArgument("unsupported model manifest format");
    }
    ModelConfig c;
    const auto kind = ParseModel(j.at("model").get<std::string>());
    if (!kind) throw InvalidArgument("unknown model kind in model.json");
    c.kind = *kind;
    c.dim = j.at("dim").get<std::size_t>();
    c.particles = j.at("particles").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    return Encoder(c, j.at("num_vertices").get<std::size_t>(),
                   j.at("num_relations").get<std::size_t>(),
                   ParameterStore::Load(dir / "params.txt"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("model.json: " + std::string(e.what()));
  }
}

}  // namespace ngdb
