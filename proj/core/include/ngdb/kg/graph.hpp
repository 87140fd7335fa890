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

#ifndef NGDB_KG_GRAPH_HPP_
#define NGDB_KG_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "ngdb/kg/ids.hpp"
#include "ngdb/kg/vertex_set.hpp"
#include "ngdb/kg/vocabulary.hpp"

namespace ngdb {

// Immutable knowledge graph over a shared vocabulary. A subset of the
// attribute triples may be flagged private; privacy is per triple, so the
// same attribute can be private for one entity and public for another.
//
// Thread-safe for concurrent readers once constructed.
class KnowledgeGraph {
 public:
  // Empty graph over an empty vocabulary.
  KnowledgeGraph();

  // Deduplicates `triples`. Throws InvalidArgument if a triple references an
  // id outside `vocabulary`, or if a private triple is absent from `triples`
  // or is not attribute-kind.
  KnowledgeGraph(std::shared_ptr<const Vocabulary> vocabulary,
                 std::vector<Triple> triples,
                 std::vector<Triple> private_triples = {});

  const Vocabulary& vocabulary() const { return *vocabulary_; }
  const std::shared_ptr<const Vocabulary>& shared_vocabulary() const {
    return vocabulary_;
  }

  // Sorted ascending by (head, relation, tail).
  std::span<const Triple> triples() const { return triples_; }
  std::span<const Triple> private_triples() const { return private_; }

  std::size_t num_vertices() const { return vocabulary_->num_vertices(); }
  std::size_t num_relations() const { return vocabulary_->num_relations(); }
  std::size_t num_triples() const { return triples_.size(); }

  bool Contains(const Triple& t) const;
  bool IsPrivate(const Triple& t) const;

  // Attribute-kind triples (public and private), sorted.
  std::vector<Triple> AttributeTriples() const;

  // Forward: {x : (v, r, x)}. Backward: {u : (u, r, v)}. The public view
  // skips private triples. Returned span is sorted and stays valid for the
  // graph's lifetime. Throws NotFound for ids outside the vocabulary.
  std::span<const VertexId> Neighbors(VertexId v, RelationId r, Direction dir,
                                      View view = View::kFull) const;

 private:
  struct Adjacency {
    std::unordered_map<std::uint64_t, VertexSet> forward;
    std::unordered_map<std::uint64_t, VertexSet> backward;
  };

  static std::uint64_t Key(VertexId v, RelationId r) {
    return (static_cast<std::uint64_t>(v) << 32) |
           static_cast<std::uint64_t>(r);
  }
  static void Build(std::span<const Triple> triples, Adjacency& adj);

  std::shared_ptr<const Vocabulary> vocabulary_;
  std::vector<Triple> triples_;
  std::vector<Triple> private_;
  Adjacency full_;
  Adjacency public_;
};

// Returns a graph whose private set is exactly `triples`. Every listed triple
// must exist in `g` and be attribute-kind (InvalidArgument otherwise).
KnowledgeGraph MarkPrivate(const KnowledgeGraph& g,
                           std::span<const Triple> triples);

// The graph with every private triple removed. The vocabulary is shared, so
// vertices touched only by private triples remain (isolated).
KnowledgeGraph PublicView(const KnowledgeGraph& g);

// Cumulative train/valid/test graphs over one vocabulary. Only `test`
// carries the private triples (flagged private).
struct GraphSplit {
  KnowledgeGraph train;
  KnowledgeGraph valid;
  KnowledgeGraph test;
  std::vector<Triple> private_triples;
};

}  // namespace ngdb

#endif  // NGDB_KG_GRAPH_HPP_
