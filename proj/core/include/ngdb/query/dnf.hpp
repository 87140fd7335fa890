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

#ifndef NGDB_QUERY_DNF_HPP_
#define NGDB_QUERY_DNF_HPP_

#include <vector>

#include "ngdb/query/query.hpp"

namespace ngdb {

// Union lifted to the top: the answer set is the union of the disjuncts'
// answer sets, and no disjunct contains a UnionNode.
struct DnfQuery {
  std::vector<Query> disjuncts;
};

// Distributes projection and intersection over union. Union-free input comes
// back as a single disjunct (the same handle). Structurally equal disjuncts
// are emitted once. No disjunct is deeper than `q`.
DnfQuery ToDnf(const Query& q);

}  // namespace ngdb

#endif  // NGDB_QUERY_DNF_HPP_
