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

#ifndef NGDB_QUERY_QUERY_HPP_
#define NGDB_QUERY_QUERY_HPP_

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "ngdb/kg/ids.hpp"
#include "ngdb/kg/vocabulary.hpp"

namespace ngdb {

struct QueryNode;

// Immutable handle to the root of a computational graph over vertex sets.
// Sub-queries are shared, so a query is a DAG; copying a Query is cheap.
// Leaves are anchors; intersection and union take at least two children.
//
// Projection covers every projection flavour: the relation's kind tells
// attribute from relational projection, and Direction::kBackward gives the
// reverse projection.
class Query {
 public:
  static Query Anchor(VertexId vertex);
  static Query Project(RelationId relation, Direction direction, Query child);
  // Throw InvalidArgument when given fewer than two children.
  static Query Intersect(std::vector<Query> children);
  static Query Unite(std::vector<Query> children);

  const QueryNode& node() const { return *node_; }

  // Stable identity of this node, for per-query memoization.
  const void* id() const { return node_.get(); }

  // Longest root-to-leaf path counted in nodes; an anchor has depth 1.
  std::size_t Depth() const;
  bool ContainsUnion() const;

  friend bool operator==(const Query& a, const Query& b);

 private:
  explicit Query(std::shared_ptr<const QueryNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const QueryNode> node_;
};

struct AnchorNode {
  VertexId vertex;
};

struct ProjectionNode {
  RelationId relation;
  Direction direction;
  Query child;
};

struct IntersectionNode {
  std::vector<Query> children;
};

struct UnionNode {
  std::vector<Query> children;
};

struct QueryNode {
  std::variant<AnchorNode, ProjectionNode, IntersectionNode, UnionNode> op;
};

template <typename T>
const T* As(const Query& q) {
  return std::get_if<T>(&q.node().op);
}

// Throws NotFound if any anchor or relation is outside `vocab`.
void ValidateQuery(const Query& q, const Vocabulary& vocab);

}  // namespace ngdb

#endif  // NGDB_QUERY_QUERY_HPP_
