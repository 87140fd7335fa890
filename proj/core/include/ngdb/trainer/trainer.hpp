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

#ifndef NGDB_TRAINER_TRAINER_HPP_
#define NGDB_TRAINER_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ngdb/benchgen/benchmark.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/encoders/encoder.hpp"
#include "ngdb/kg/ids.hpp"
#include "ngdb/numerics/parameters.hpp"
#include "ngdb/numerics/tape.hpp"

namespace ngdb {

// Which projections the privacy loss pushes down for a private a(u, x):
// kReverse scores u from x through the backward relation only; kBoth also
// scores x from u through the forward relation.
enum class PrivacyDirection { kReverse, kBoth };

std::string_view DirectionName(PrivacyDirection d);  // "reverse", "both"
std::optional<PrivacyDirection> ParseDirection(std::string_view name);

struct TrainConfig {
  ModelConfig model;
  double beta = 0.0;
  OptimizerConfig optimizer;
  std::size_t epochs = 50;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
  // Candidates per softmax beyond the positives; 0 = all vertices.
  std::size_t negative_samples = 0;
  // Private triples drawn per step for the privacy loss; 0 = all of them.
  std::size_t privacy_sample = 0;
  PrivacyDirection privacy_direction = PrivacyDirection::kReverse;
  // Entity rows are rescaled to at most this L2 norm after every step;
  // 0 = unconstrained.
  double entity_max_norm = 0.0;
};

// Throws InvalidArgument for a config that violates beta >= 0, epochs >= 1,
// batch_size >= 1, a non-positive learning rate, or a negative
// entity_max_norm.
void ValidateConfig(const TrainConfig& config);

// JSON object with one key per TrainConfig field; missing keys keep their
// defaults, unknown keys are rejected.
TrainConfig ReadTrainConfig(std::istream& in);
void WriteTrainConfig(std::ostream& out, const TrainConfig& config);

// A query with the answers its probabilities are trained toward.
struct TrainingExample {
  Query query;
  VertexSet answers;
};

// Training examples from benchmark queries: train answers, skipping queries
// without any.
std::vector<TrainingExample> TrainingExamples(
    std::span<const BenchmarkQuery> queries);

// Candidate sets for the softmax. With `negatives` == 0 every vertex is a
// candidate; otherwise the positives plus `negatives` vertices drawn
// uniformly (with replacement, positives excluded).
struct CandidateSampler {
  std::size_t num_vertices = 0;
  std::size_t negatives = 0;
};

// Public retrieval loss: -(1/N) * sum of log p(q, v) over the N
// (query, answer) pairs of the batch. Throws InvalidArgument on an empty
// batch or an example without answers.
Var PublicLoss(Tape& tape, const Encoder& encoder,
               std::span<const TrainingExample> batch,
               const CandidateSampler& candidates, Rng& rng);

// Privacy loss: mean over the terms of log p(f_P(e_x, a^-1), u) for each
// private a(u, x), plus log p(f_P(e_u, a), x) with kBoth. The positive sign
// means minimizing pushes these probabilities down. Zero (a constant) for
// an empty set.
Var PrivacyLoss(Tape& tape, const Encoder& encoder,
                std::span<const Triple> private_triples,
                PrivacyDirection direction,
                const CandidateSampler& candidates, Rng& rng);

// L_u + beta * L_p. With beta == 0 this returns `public_loss` itself.
Var TotalLoss(Var public_loss, Var privacy_loss, double beta);

struct EpochLoss {
  std::size_t epoch = 0;
  double public_loss = 0.0;
  double privacy_loss = 0.0;
  double total = 0.0;
};

// Fresh encoder for `config` with parameters seeded from config.seed.
Encoder InitialEncoder(const TrainConfig& config, std::size_t num_vertices,
                       std::size_t num_relations);

using EpochCallback = std::function<void(const EpochLoss&, const Encoder&)>;

// Minibatch training on `examples` (shuffled every epoch) with the privacy
// loss drawn from `private_triples`. Deterministic given config.seed.
// Losses per epoch are means over its batches. Throws NumericError naming
// the epoch and batch if a loss or gradient becomes non-finite.
std::vector<EpochLoss> Train(Encoder& encoder,
                             std::span<const TrainingExample> examples,
                             std::span<const Triple> private_triples,
                             const TrainConfig& config,
                             const EpochCallback& on_epoch = nullptr);

// Loss trace as CSV with header `epoch,L_u,L_p,L`.
void WriteLossTrace(std::ostream& out, std::span<const EpochLoss> trace);

}  // namespace ngdb

#endif  // NGDB_TRAINER_TRAINER_HPP_
