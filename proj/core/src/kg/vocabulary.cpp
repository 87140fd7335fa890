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

#include "ngdb/kg/vocabulary.hpp"

#include "ngdb/common/error.hpp"

namespace ngdb {

void Schema::Declare(std::string_view name, RelationKind kind) {
  if (index_.find(name) != index_.end()) {
    throw InvalidArgument("relation declared twice: " + std::string(name));
  }
  index_.emplace(std::string(name), relations_.size());
  relations_.emplace_back(std::string(name), kind);
}

std::optional<RelationKind> Schema::Find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return relations_[it->second].second;
}

Vocabulary::Vocabulary(const Schema& schema) {
  for (const auto& [name, kind] : schema.relations()) AddRelation(name, kind);
}

VertexId Vocabulary::InternVertex(std::string_view name) {
  auto it = vertex_ids_.find(name);
  if (it != vertex_ids_.end()) return it->second;
  const VertexId id = MakeVertexId(vertex_names_.size());
  vertex_names_.emplace_back(name);
  vertex_ids_.emplace(std::string(name), id);
  return id;
}

RelationId Vocabulary::AddRelation(std::string_view name, RelationKind kind) {
  if (relation_ids_.find(name) != relation_ids_.end()) {
    throw InvalidArgument("duplicate relation: " + std::string(name));
  }
  const RelationId id = MakeRelationId(relation_names_.size());
  relation_names_.emplace_back(name);
  relation_kinds_.push_back(kind);
  relation_ids_.emplace(std::string(name), id);
  return id;
}

std::optional<VertexId> Vocabulary::FindVertex(std::string_view name) const {
  auto it = vertex_ids_.find(name);
  if (it == vertex_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> Vocabulary::FindRelation(
    std::string_view name) const {
  auto it = relation_ids_.find(name);
  if (it == relation_ids_.end()) return std::nullopt;
  return it->second;
}

VertexId Vocabulary::Vertex(std::string_view name) const {
  if (auto v = FindVertex(name)) return *v;
  throw NotFound("unknown vertex: " + std::string(name));
}

RelationId Vocabulary::Relation(std::string_view name) const {
  if (auto r = FindRelation(name)) return *r;
  throw NotFound("unknown relation: " + std::string(name));
}

const std::string& Vocabulary::VertexName(VertexId v) const {
  if (!Contains(v)) {
    throw NotFound("vertex id out of range: " + std::to_string(Index(v)));
  }
  return vertex_names_[Index(v)];
}

const std::string& Vocabulary::RelationName(RelationId r) const {
  if (!Contains(r)) {
    throw NotFound("relation id out of range: " + std::to_string(Index(r)));
  }
  return relation_names_[Index(r)];
}

RelationKind Vocabulary::Kind(RelationId r) const {
  if (!Contains(r)) {
    throw NotFound("relation id out of range: " + std::to_string(Index(r)));
  }
  return relation_kinds_[Index(r)];
}

}  // namespace ngdb
