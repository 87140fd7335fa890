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

#ifndef NGDB_TESTS_SUPPORT_TEST_SUPPORT_HPP_
#define NGDB_TESTS_SUPPORT_TEST_SUPPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ngdb/common/rng.hpp"
#include "ngdb/encoders/encoder.hpp"
#include "ngdb/kg/graph.hpp"
#include "ngdb/numerics/parameters.hpp"
#include "ngdb/numerics/tape.hpp"
#include "ngdb/query/query.hpp"
#include "ngdb/query/query_type.hpp"

namespace ngdb::testing {

struct RandomGraphOptions {
  std::size_t max_vertices = 60;
  std::size_t max_relations = 8;
  std::size_t max_triples = 240;
  double private_fraction = 0.2;  // of attribute triples
};

// Graph with vertices "v0".."vN", relations "r0".."rM" (every second one an
// attribute), uniformly random triples, and a random subset of attribute
// triples flagged private.
KnowledgeGraph RandomGraph(Rng& rng, const RandomGraphOptions& options = {});

// Random query of benchmark type `type` over g's vocabulary. Half of the
// time it is grown backward from an existing triple so that answers are
// usually non-empty; otherwise anchors and relations are uniform.
Query RandomQuery(const KnowledgeGraph& g, QueryType type, Rng& rng);

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // coordinates at a kink
  std::string worst;        // "param[i]: analytic vs numeric"
};

using LossFn = std::function<Var(Tape&)>;

// Compares tape gradients of `loss` against central differences with step
// `h` on up to `max_coords` randomly chosen coordinates of every parameter.
// Relative error is |a - n| / max(|a|, |n|, 1e-6).
GradCheckResult CheckGradients(ParameterStore& store, const LossFn& loss,
                               Rng& rng, std::size_t max_coords = 12,
                               double h = 1e-5);

// Small model config for gradient checks.
ModelConfig SmallConfig(ModelKind kind);

}  // namespace ngdb::testing

#endif  // NGDB_TESTS_SUPPORT_TEST_SUPPORT_HPP_
