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

#include "ngdb/query/query.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ngdb/common/error.hpp"

namespace ngdb {

Query Query::Anchor(VertexId vertex) {
  return Query(std::make_shared<const QueryNode>(
      QueryNode{AnchorNode{vertex}}));
}

Query Query::Project(RelationId relation, Direction direction, Query child) {
  return Query(std::make_shared<const QueryNode>(
      QueryNode{ProjectionNode{relation, direction, std::move(child)}}));
}

Query Query::Intersect(std::vector<Query> children) {
  if (children.size() < 2) {
    throw InvalidArgument("intersection needs at least two operands, got " +
                          std::to_string(children.size()));
  }
  return Query(std::make_shared<const QueryNode>(
      QueryNode{IntersectionNode{std::move(children)}}));
}

Query Query::Unite(std::vector<Query> children) {
  if (children.size() < 2) {
    throw InvalidArgument("union needs at least two operands, got " +
                          std::to_string(children.size()));
  }
  return Query(std::make_shared<const QueryNode>(
      QueryNode{UnionNode{std::move(children)}}));
}

namespace {

struct DepthVisitor {
  std::size_t operator()(const AnchorNode&) const { return 1; }
  std::size_t operator()(const ProjectionNode& p) const {
    return 1 + p.child.Depth();
  }
  std::size_t operator()(const IntersectionNode& n) const {
    return 1 + MaxDepth(n.children);
  }
  std::size_t operator()(const UnionNode& n) const {
    return 1 + MaxDepth(n.children);
  }
  static std::size_t MaxDepth(const std::vector<Query>& children) {
    std::size_t d = 0;
    for (const Query& c : children) d = std::max(d, c.Depth());
    return d;
  }
};

}  // namespace

std::size_t Query::Depth() const { return std::visit(DepthVisitor{}, node_->op); }

bool Query::ContainsUnion() const {
  if (As<UnionNode>(*this)) return true;
  if (const auto* p = As<ProjectionNode>(*this)) return p->child.ContainsUnion();
  if (const auto* n = As<IntersectionNode>(*this)) {
    return std::any_of(n->children.begin(), n->children.end(),
                       [](const Query& c) { return c.ContainsUnion(); });
  }
  return false;
}

bool operator==(const Query& a, const Query& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node().op;
  const auto& y = b.node().op;
  if (x.index() != y.index()) return false;
  if (const auto* p = std::get_if<AnchorNode>(&x)) {
    return p->vertex == std::get<AnchorNode>(y).vertex;
  }
  if (const auto* p = std::get_if<ProjectionNode>(&x)) {
    const auto& q = std::get<ProjectionNode>(y);
    return p->relation == q.relation && p->direction == q.direction &&
           p->child == q.child;
  }
  if (const auto* p = std::get_if<IntersectionNode>(&x)) {
    return p->children == std::get<IntersectionNode>(y).children;
  }
  return std::get<UnionNode>(x).children == std::get<UnionNode>(y).children;
}

void ValidateQuery(const Query& q, const Vocabulary& vocab) {
  if (const auto* a = As<AnchorNode>(q)) {
    if (!vocab.Contains(a->vertex)) {
      throw NotFound("query anchor outside vocabulary: #" +
                     std::to_string(Index(a->vertex)));
    }
  } else if (const auto* p = As<ProjectionNode>(q)) {
    if (!vocab.Contains(p->relation)) {
      throw NotFound("query relation outside vocabulary: #" +
                     std::to_string(Index(p->relation)));
    }
    ValidateQuery(p->child, vocab);
  } else if (const auto* n = As<IntersectionNode>(q)) {
    for (const Query& c : n->children) ValidateQuery(c, vocab);
  } else {
    for (const Query& c : As<UnionNode>(q)->children) ValidateQuery(c, vocab);
  }
}

}  // namespace ngdb
