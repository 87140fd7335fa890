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

#ifndef NGDB_TRAINER_NOISE_HPP_
#define NGDB_TRAINER_NOISE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ngdb/common/rng.hpp"
#include "ngdb/encoders/encoder.hpp"

namespace ngdb {

// Inference-time protection baseline: isotropic Gaussian noise on the query
// embedding.
struct NoiseConfig {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// Adds independent N(0, sigma^2) noise to every coordinate of each
// disjunct's query state: the GQE vector, the Q2B box center (offsets are
// left alone to stay non-negative), every Q2P particle.
std::vector<QueryEmbedding> Perturb(Tape& tape,
                                    std::span<const QueryEmbedding> disjuncts,
                                    double sigma, Rng& rng);

// Scores of every vertex under one noise draw. The draw depends only on
// (noise.seed, query_key), so a query keeps its perturbation across
// candidates and runs. sigma == 0 reproduces Encoder::ScoreAll exactly.
// Throws InvalidArgument for a negative or non-finite sigma.
std::vector<double> NoisyScoreAll(const Encoder& encoder, const Query& q,
                                  const NoiseConfig& noise,
                                  std::uint64_t query_key);
double NoisyScore(const Encoder& encoder, const Query& q, VertexId v,
                  const NoiseConfig& noise, std::uint64_t query_key);

}  // namespace ngdb

#endif  // NGDB_TRAINER_NOISE_HPP_
