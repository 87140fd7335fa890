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

#ifndef NGDB_KG_VOCABULARY_HPP_
#define NGDB_KG_VOCABULARY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ngdb/kg/ids.hpp"

namespace ngdb {

// Relation names in declaration order, each with its kind. Relation ids are
// assigned in this order.
class Schema {
 public:
  // Throws InvalidArgument if `name` is already declared.
  void Declare(std::string_view name, RelationKind kind);

  std::optional<RelationKind> Find(std::string_view name) const;

  const std::vector<std::pair<std::string, RelationKind>>& relations() const {
    return relations_;
  }

 private:
  std::vector<std::pair<std::string, RelationKind>> relations_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Bijection between names and dense ids for vertices and relations.
// Vertex names are opaque; numeric attribute values are ordinary vertices.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(const Schema& schema);

  // Returns the existing id for `name` or appends a new vertex.
  VertexId InternVertex(std::string_view name);

  // Throws InvalidArgument on a duplicate name.
  RelationId AddRelation(std::string_view name, RelationKind kind);

  std::optional<VertexId> FindVertex(std::string_view name) const;
  std::optional<RelationId> FindRelation(std::string_view name) const;

  // Throwing lookups (NotFound).
  VertexId Vertex(std::string_view name) const;
  RelationId Relation(std::string_view name) const;

  const std::string& VertexName(VertexId v) const;
  const std::string& RelationName(RelationId r) const;
  RelationKind Kind(RelationId r) const;

  bool Contains(VertexId v) const { return Index(v) < vertex_names_.size(); }
  bool Contains(RelationId r) const {
    return Index(r) < relation_names_.size();
  }

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_relations() const { return relation_names_.size(); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.vertex_names_ == b.vertex_names_ &&
           a.relation_names_ == b.relation_names_ &&
           a.relation_kinds_ == b.relation_kinds_;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::map<std::string, VertexId, std::less<>> vertex_ids_;
  std::vector<std::string> relation_names_;
  std::vector<RelationKind> relation_kinds_;
  std::map<std::string, RelationId, std::less<>> relation_ids_;
};

}  // namespace ngdb

#endif  // NGDB_KG_VOCABULARY_HPP_
