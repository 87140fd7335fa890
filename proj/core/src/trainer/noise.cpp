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

#include "ngdb/trainer/noise.hpp"

#include <cmath>
#include <type_traits>

#include "ngdb/common/error.hpp"
#include "ngdb/numerics/ops.hpp"

namespace ngdb {
namespace {

Var AddNoise(Tape& tape, Var x, double sigma, Rng& rng) {
  NdArray noise(x.value().shape());
  for (double& v : noise.data()) v = sigma * rng.Normal();
  return ad::Add(x, tape.Constant(std::move(noise)));
}

void CheckSigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("noise sigma must be finite and non-negative");
  }
}

}  // namespace

std::vector<QueryEmbedding> Perturb(Tape& tape,
                                    std::span<const QueryEmbedding> disjuncts,
                                    double sigma, Rng& rng) {
  CheckSigma(sigma);
  std::vector<QueryEmbedding> out;
  out.reserve(disjuncts.size());
  for (const QueryEmbedding& q : disjuncts) {
    out.push_back(std::visit(
        [&](const auto& e) -> QueryEmbedding {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, VectorEmbedding>) {
            return VectorEmbedding{AddNoise(tape, e.vector, sigma, rng)};
          } else if constexpr (std::is_same_v<T, BoxEmbedding>) {
            return BoxEmbedding{AddNoise(tape, e.center, sigma, rng),
                                e.offset};
          } else {
            return ParticleEmbedding{AddNoise(tape, e.particles, sigma, rng)};
          }
        },
        q));
  }
  return out;
}

std::vector<double> NoisyScoreAll(const Encoder& encoder, const Query& q,
                                  const NoiseConfig& noise,
                                  std::uint64_t query_key) {
  CheckSigma(noise.sigma);
  if (noise.sigma == 0.0) return encoder.ScoreAll(q);
  Tape tape(false);
  Rng rng(DeriveSeed(noise.seed, query_key));
  const auto disjuncts = Perturb(tape, encoder.Encode(tape, q), noise.sigma, rng);
  const auto data = encoder.Scores(tape, disjuncts).value().data();
  return {data.begin(), data.end()};
}

double NoisyScore(const Encoder& encoder, const Query& q, VertexId v,
                  const NoiseConfig& noise, std::uint64_t query_key) {
  const auto scores = NoisyScoreAll(encoder, q, noise, query_key);
  if (Index(v) >= scores.size()) {
    throw NotFound("vertex id " + std::to_string(Index(v)) +
                   " outside the model's tables");
  }
  return scores[Index(v)];
}

}  // namespace ngdb
