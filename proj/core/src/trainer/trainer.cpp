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

#include "ngdb/trainer/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "ngdb/common/error.hpp"
#include "ngdb/numerics/ops.hpp"

namespace ngdb {
namespace {

constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kTrainStream = 1;

// Candidate list with the positives first, or nullopt for all vertices.
std::optional<std::vector<VertexId>> Candidates(
    const CandidateSampler& sampler, std::span<const VertexId> positives,
    Rng& rng) {
  if (sampler.negatives == 0) return std::nullopt;
  std::vector<VertexId> out(positives.begin(), positives.end());
  if (positives.size() >= sampler.num_vertices) return out;
  VertexSet sorted(positives.begin(), positives.end());
  Normalize(sorted);
  for (std::size_t k = 0; k < sampler.negatives; ++k) {
    VertexId v;
    do {
      v = MakeVertexId(rng.UniformIndex(sampler.num_vertices));
    } while (Contains(sorted, v));
    out.push_back(v);
  }
  return out;
}

// Sum of log p(q, v) over `targets`, as a 1x1 Var.
Var SumLogProb(Tape& tape, const Encoder& encoder,
               std::span<const QueryEmbedding> disjuncts,
               std::span<const VertexId> targets,
               const CandidateSampler& sampler, Rng& rng) {
  const auto candidates = Candidates(sampler, targets, rng);
  std::vector<std::size_t> cols;
  cols.reserve(targets.size());
  Var scores;
  if (candidates) {
    scores = encoder.Scores(tape, disjuncts, *candidates);
    for (std::size_t i = 0; i < targets.size(); ++i) cols.push_back(i);
  } else {
    scores = encoder.Scores(tape, disjuncts);
    for (VertexId v : targets) cols.push_back(Index(v));
  }
  return ad::ReduceSum(ad::GatherCols(ad::LogSoftmax(scores, 1), cols), 1);
}

void ClampRowNorms(NdArray& table, double max_norm) {
  for (std::size_t r = 0; r < table.rows(); ++r) {
    auto row = table.row(r);
    double sq = 0.0;
    for (double x : row) sq += x * x;
    const double norm = std::sqrt(sq);
    if (norm <= max_norm) continue;
    for (double& x : row) x *= max_norm / norm;
  }
}

Var SumAll(std::span<const Var> terms) {
  if (terms.size() == 1) return terms.front();
  return ad::ReduceSum(ad::ConcatCols(terms), 1);
}

}  // namespace

std::string_view DirectionName(PrivacyDirection d) {
  return d == PrivacyDirection::kBoth ? "both" : "reverse";
}

std::optional<PrivacyDirection> ParseDirection(std::string_view name) {
  if (name == "reverse") return PrivacyDirection::kReverse;
  if (name == "both") return PrivacyDirection::kBoth;
  return std::nullopt;
}

void ValidateConfig(const TrainConfig& c) {
  if (!(c.beta >= 0.0) || !std::isfinite(c.beta)) {
    throw InvalidArgument("beta must be a finite non-negative number");
  }
  if (c.epochs == 0) throw InvalidArgument("epochs must be at least 1");
  if (c.batch_size == 0) throw InvalidArgument("batch_size must be at least 1");
  if (!(c.optimizer.learning_rate > 0.0) ||
      !std::isfinite(c.optimizer.learning_rate)) {
    throw InvalidArgument("learning_rate must be positive");
  }
  if (!(c.entity_max_norm >= 0.0) || !std::isfinite(c.entity_max_norm)) {
    throw InvalidArgument("entity_max_norm must be finite and non-negative");
  }
}

TrainConfig ReadTrainConfig(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("train config: ") + e.what(), 0);
  }
  if (!j.is_object()) throw InvalidArgument("train config must be an object");
  TrainConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "model") {
        const auto kind = ParseModel(value.get<std::string>());
        if (!kind) throw InvalidArgument("unknown model " + value.dump());
        c.model.kind = *kind;
      } else if (key == "dim") {
        c.model.dim = value.get<std::size_t>();
      } else if (key == "particles") {
        c.model.particles = value.get<std::size_t>();
      } else if (key == "alpha") {
        c.model.alpha = value.get<double>();
      } else if (key == "beta") {
        c.beta = value.get<double>();
      } else if (key == "optimizer") {
        const auto name = value.get<std::string>();
        if (name == "adam") {
          c.optimizer.kind = OptimizerConfig::Kind::kAdam;
        } else if (name == "sgd") {
          c.optimizer.kind = OptimizerConfig::Kind::kSgd;
        } else {
          throw InvalidArgument("unknown optimizer " + name);
        }
      } else if (key == "learning_rate") {
        c.optimizer.learning_rate = value.get<double>();
      } else if (key == "adam_beta1") {
        c.optimizer.beta1 = value.get<double>();
      } else if (key == "adam_beta2") {
        c.optimizer.beta2 = value.get<double>();
      } else if (key == "adam_epsilon") {
        c.optimizer.epsilon = value.get<double>();
      } else if (key == "epochs") {
        c.epochs = value.get<std::size_t>();
      } else if (key == "batch_size") {
        c.batch_size = value.get<std::size_t>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "negative_samples") {
        c.negative_samples = value.get<std::size_t>();
      } else if (key == "privacy_sample") {
        c.privacy_sample = value.get<std::size_t>();
      } else if (key == "entity_max_norm") {
        c.entity_max_norm = value.get<double>();
      } else if (key == "privacy_direction") {
        const auto d = ParseDirection(value.get<std::string>());
        if (!d) throw InvalidArgument("unknown privacy_direction");
        c.privacy_direction = *d;
      } else {
        throw InvalidArgument("unknown train config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("train config: ") + e.what());
  }
  ValidateConfig(c);
  return c;
}

void WriteTrainConfig(std::ostream& out, const TrainConfig& c) {
  nlohmann::ordered_json j;
  j["model"] = std::string(ModelName(c.model.kind));
  j["dim"] = c.model.dim;
  j["particles"] = c.model.particles;
  j["alpha"] = c.model.alpha;
  j["beta"] = c.beta;
  j["optimizer"] =
      c.optimizer.kind == OptimizerConfig::Kind::kAdam ? "adam" : "sgd";
  j["learning_rate"] = c.optimizer.learning_rate;
  j["adam_beta1"] = c.optimizer.beta1;
  j["adam_beta2"] = c.optimizer.beta2;
  j["adam_epsilon"] = c.optimizer.epsilon;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["negative_samples"] = c.negative_samples;
  j["privacy_sample"] = c.privacy_sample;
  j["privacy_direction"] = std::string(DirectionName(c.privacy_direction));
  j["entity_max_norm"] = c.entity_max_norm;
  out << j.dump(2) << '\n';
}

std::vector<TrainingExample> TrainingExamples(
    std::span<const BenchmarkQuery> queries) {
  std::vector<TrainingExample> out;
  for (const BenchmarkQuery& q : queries) {
    if (!q.train_answers.empty()) out.push_back({q.query, q.train_answers});
  }
  return out;
}

Var PublicLoss(Tape& tape, const Encoder& encoder,
               std::span<const TrainingExample> batch,
               const CandidateSampler& candidates, Rng& rng) {
  if (batch.empty()) throw InvalidArgument("PublicLoss: empty batch");
  std::vector<Var> sums;
  std::size_t pairs = 0;
  for (const TrainingExample& ex : batch) {
    if (ex.answers.empty()) {
      throw InvalidArgument("PublicLoss: training query without answers");
    }
    const auto disjuncts = encoder.Encode(tape, ex.query);
    sums.push_back(
        SumLogProb(tape, encoder, disjuncts, ex.answers, candidates, rng));
    pairs += ex.answers.size();
  }
  return ad::Scale(SumAll(sums), -1.0 / static_cast<double>(pairs));
}

Var PrivacyLoss(Tape& tape, const Encoder& encoder,
                std::span<const Triple> private_triples,
                PrivacyDirection direction,
                const CandidateSampler& candidates, Rng& rng) {
  if (private_triples.empty()) return tape.Constant(NdArray::Scalar(0.0));
  std::vector<Var> terms;
  for (const Triple& t : private_triples) {
    const QueryEmbedding reverse[] = {encoder.Project(
        tape, encoder.Anchor(tape, t.tail), t.relation, Direction::kBackward)};
    const VertexId u[] = {t.head};
    terms.push_back(SumLogProb(tape, encoder, reverse, u, candidates, rng));
    if (direction == PrivacyDirection::kBoth) {
      const QueryEmbedding forward[] = {encoder.Project(
          tape, encoder.Anchor(tape, t.head), t.relation, Direction::kForward)};
      const VertexId x[] = {t.tail};
      terms.push_back(SumLogProb(tape, encoder, forward, x, candidates, rng));
    }
  }
  return ad::Scale(SumAll(terms), 1.0 / static_cast<double>(terms.size()));
}

Var TotalLoss(Var public_loss, Var privacy_loss, double beta) {
  if (beta == 0.0) return public_loss;
  return ad::Add(public_loss, ad::Scale(privacy_loss, beta));
}

Encoder InitialEncoder(const TrainConfig& config, std::size_t num_vertices,
                       std::size_t num_relations) {
  return Encoder(config.model, num_vertices, num_relations,
                 DeriveSeed(config.seed, kInitStream));
}

std::vector<EpochLoss> Train(Encoder& encoder,
                             std::span<const TrainingExample> examples,
                             std::span<const Triple> private_triples,
                             const TrainConfig& config,
                             const EpochCallback& on_epoch) {
  ValidateConfig(config);
  if (examples.empty()) throw InvalidArgument("no training examples");
  if (encoder.config() != config.model) {
    throw InvalidArgument("encoder does not match the training config");
  }
  Rng rng(DeriveSeed(config.seed, kTrainStream));
  const CandidateSampler sampler{encoder.num_vertices(),
                                 config.negative_samples};
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Triple> secret(private_triples.begin(), private_triples.end());
  const std::size_t privacy_n =
      config.privacy_sample == 0
          ? secret.size()
          : std::min(config.privacy_sample, secret.size());

  std::vector<EpochLoss> trace;
  ParameterStore& params = encoder.mutable_parameters();
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    EpochLoss sum{epoch, 0.0, 0.0, 0.0};
    std::size_t batches = 0;
    for (std::size_t begin = 0; begin < order.size();
         begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      std::vector<TrainingExample> batch;
      for (std::size_t i = begin; i < end; ++i) {
        batch.push_back(examples[order[i]]);
      }
      // Fresh privacy sample each step: the first privacy_n slots after a
      // partial shuffle.
      for (std::size_t i = 0; i < privacy_n && privacy_n < secret.size(); ++i) {
        std::swap(secret[i],
                  secret[i + rng.UniformIndex(secret.size() - i)]);
      }
      try {
        Tape tape;
        const Var lu = PublicLoss(tape, encoder, batch, sampler, rng);
        const Var lp =
            PrivacyLoss(tape, encoder,
                        std::span<const Triple>(secret).first(privacy_n),
                        config.privacy_direction, sampler, rng);
        const Var loss = TotalLoss(lu, lp, config.beta);
        tape.Backward(loss);
        tape.AccumulateGradients(params);
        OptimizerStep(params, config.optimizer);
        if (config.entity_max_norm > 0.0) {
          ClampRowNorms(params.mutable_value(params.Id("entity")),
                        config.entity_max_norm);
        }
        sum.public_loss += lu.value()[0];
        sum.privacy_loss += lp.value()[0];
        sum.total += loss.value()[0];
      } catch (const NumericError& e) {
        params.ZeroGrad();
        throw NumericError("epoch " + std::to_string(epoch) + " batch " +
                           std::to_string(batches + 1) + ": " + e.what());
      }
      ++batches;
    }
    const double n = static_cast<double>(batches);
    trace.push_back({epoch, sum.public_loss / n, sum.privacy_loss / n,
                     sum.total / n});
    if (on_epoch) on_epoch(trace.back(), encoder);
  }
  return trace;
}

void WriteLossTrace(std::ostream& out, std::span<const EpochLoss> trace) {
  const auto old_precision = out.precision(17);
  out << "epoch,L_u,L_p,L\n";
  for (const EpochLoss& e : trace) {
    out << e.epoch << ',' << e.public_loss << ',' << e.privacy_loss << ','
        << e.total << '\n';
  }
  out.precision(old_precision);
}

}  // namespace ngdb
