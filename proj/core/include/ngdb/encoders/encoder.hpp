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

#ifndef NGDB_ENCODERS_ENCODER_HPP_
#define NGDB_ENCODERS_ENCODER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ngdb/kg/ids.hpp"
#include "ngdb/numerics/parameters.hpp"
#include "ngdb/numerics/tape.hpp"
#include "ngdb/query/query.hpp"

namespace ngdb {

enum class ModelKind { kGqe, kQ2b, kQ2p };

std::string_view ModelName(ModelKind kind);  // "gqe", "q2b", "q2p"
std::optional<ModelKind> ParseModel(std::string_view name);

struct ModelConfig {
  ModelKind kind = ModelKind::kGqe;
  std::size_t dim = 64;
  std::size_t particles = 3;  // Q2P only
  double alpha = 0.02;        // Q2B inside-distance weight

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Query states, all recorded on a Tape.
struct VectorEmbedding {
  Var vector;  // 1 x d
};
struct BoxEmbedding {
  Var center;  // 1 x d
  Var offset;  // 1 x d, element-wise >= 0
};
struct ParticleEmbedding {
  Var particles;  // k x d
};
using QueryEmbedding =
    std::variant<VectorEmbedding, BoxEmbedding, ParticleEmbedding>;

// GQE, Q2B, and Q2P query encoders over shared entity and relation tables.
//
// Every relation has separate forward and backward rows in the relation
// tables. Unions are handled by rewriting to DNF and scoring with the max
// over disjuncts; the operators below therefore see only union-free input.
//
// Scores (higher is better):
//   GQE  -||q - e_v||_2
//   Q2B  -(outside(e_v, box) + alpha * inside(e_v, box))
//   Q2P  max over particles p of -||p - e_v||_2
class Encoder {
 public:
  // Fresh parameters, initialized deterministically from `seed`.
  Encoder(ModelConfig config, std::size_t num_vertices,
          std::size_t num_relations, std::uint64_t seed);
  // Adopts `parameters`, which must hold exactly the names and shapes that
  // the seeded constructor would create (InvalidArgument otherwise).
  Encoder(ModelConfig config, std::size_t num_vertices,
          std::size_t num_relations, ParameterStore parameters);

  const ModelConfig& config() const { return config_; }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_relations() const { return num_relations_; }
  const ParameterStore& parameters() const { return params_; }
  ParameterStore& mutable_parameters() { return params_; }

  // Operators. Throw InvalidArgument on a variant that does not belong to
  // this model, on arity < 2, and NotFound on out-of-range ids.
  QueryEmbedding Anchor(Tape& tape, VertexId v) const;
  QueryEmbedding Project(Tape& tape, const QueryEmbedding& q, RelationId r,
                         Direction dir) const;
  QueryEmbedding Intersect(Tape& tape,
                           std::span<const QueryEmbedding> inputs) const;

  // `q` must be union-free.
  QueryEmbedding EncodeConjunctive(Tape& tape, const Query& q) const;
  // One embedding per DNF disjunct.
  std::vector<QueryEmbedding> Encode(Tape& tape, const Query& q) const;

  // Row vector of scores against every vertex (1 x V) or against
  // `candidates` in the given order (1 x |C|). A DNF list scores with the
  // max over disjuncts.
  Var Scores(Tape& tape, const QueryEmbedding& q) const;
  Var Scores(Tape& tape, std::span<const QueryEmbedding> disjuncts) const;
  Var Scores(Tape& tape, std::span<const QueryEmbedding> disjuncts,
             std::span<const VertexId> candidates) const;

  // Entity embedding row (1 x d) for v.
  Var EntityRow(Tape& tape, VertexId v) const;

  // Convenience wrappers that evaluate without recording gradients.
  std::vector<double> ScoreAll(const Query& q) const;
  double Score(const Query& q, VertexId v) const;
  // Softmax of scores over `candidates`, evaluated at v. Throws
  // InvalidArgument if candidates is empty or lacks v.
  double Probability(const Query& q, VertexId v,
                     std::span<const VertexId> candidates) const;

 private:
  struct Ids {
    ParamId entity = 0;
    ParamId relation = 0;         // GQE, Q2P: 2R x d
    ParamId relation_offset = 0;  // Q2B: 2R x d, non-negative
    std::vector<ParamId> net;     // model-specific, in registration order
  };

  void Register(ParameterStore& store, std::uint64_t seed) const;
  void Bind();
  std::size_t RelationRow(RelationId r, Direction dir) const;
  Var Param(Tape& tape, std::size_t net_index) const;
  Var ScoresAgainst(const QueryEmbedding& q, Var entities) const;

  ModelConfig config_;
  std::size_t num_vertices_;
  std::size_t num_relations_;
  ParameterStore params_;
  Ids ids_;
};

// Model checkpoint: `params.txt` in the parameter checkpoint format plus
// `model.json` holding the config and table sizes.
void SaveModel(const std::filesystem::path& dir, const Encoder& encoder);
Encoder LoadModel(const std::filesystem::path& dir);

}  // namespace ngdb

#endif  // NGDB_ENCODERS_ENCODER_HPP_
