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

#ifndef NGDB_SYMBOLIC_ORACLE_HPP_
#define NGDB_SYMBOLIC_ORACLE_HPP_

#include <cstddef>

#include "ngdb/kg/graph.hpp"
#include "ngdb/query/query.hpp"
#include "ngdb/symbolic/evaluate.hpp"

namespace ngdb {

inline constexpr std::size_t kOracleMaxVertices = 1000;
inline constexpr std::size_t kOracleMaxAssignments = 200'000'000;

// Independent checker for Evaluate. Rewrites the query into a disjunction of
// conjunctions of atoms r(X, Y) over variables and constants, then tries
// every assignment of vertices to the variables of each conjunction and
// collects the target values that satisfy all atoms. Atoms are checked
// against a hash set built from g.triples(); adjacency indices are never
// consulted.
//
// Throws InvalidArgument when g has more than kOracleMaxVertices vertices or
// a conjunction would need more than kOracleMaxAssignments assignments.
AnswerSet BruteForceOracle(const KnowledgeGraph& g, const Query& q);

}  // namespace ngdb

#endif  // NGDB_SYMBOLIC_ORACLE_HPP_
