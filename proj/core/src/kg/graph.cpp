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

#include "ngdb/kg/graph.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

void SortUnique(std::vector<Triple>& triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
}

std::string Describe(const Triple& t, const Vocabulary& vocab) {
  auto name = [&](VertexId v) {
    return vocab.Contains(v) ? vocab.VertexName(v)
                             : "#" + std::to_string(Index(v));
  };
  const std::string rel = vocab.Contains(t.relation)
                              ? vocab.RelationName(t.relation)
                              : "#" + std::to_string(Index(t.relation));
  return "(" + name(t.head) + ", " + rel + ", " + name(t.tail) + ")";
}

}  // namespace

KnowledgeGraph::KnowledgeGraph()
    : vocabulary_(std::make_shared<const Vocabulary>()) {}

KnowledgeGraph::KnowledgeGraph(std::shared_ptr<const Vocabulary> vocabulary,
                               std::vector<Triple> triples,
                               std::vector<Triple> private_triples)
    : vocabulary_(std::move(vocabulary)),
      triples_(std::move(triples)),
      private_(std::move(private_triples)) {
  if (vocabulary_ == nullptr) {
    throw InvalidArgument("KnowledgeGraph: null vocabulary");
  }
  SortUnique(triples_);
  SortUnique(private_);
  for (const Triple& t : triples_) {
    if (!vocabulary_->Contains(t.head) || !vocabulary_->Contains(t.tail) ||
        !vocabulary_->Contains(t.relation)) {
      throw InvalidArgument("triple references unknown id: " +
                            Describe(t, *vocabulary_));
    }
  }
  for (const Triple& t : private_) {
    if (!std::binary_search(triples_.begin(), triples_.end(), t)) {
      throw InvalidArgument("private triple not in graph: " +
                            Describe(t, *vocabulary_));
    }
    if (vocabulary_->Kind(t.relation) != RelationKind::kAttribute) {
      throw InvalidArgument("only attribute triples can be private: " +
                            Describe(t, *vocabulary_));
    }
  }
  Build(triples_, full_);
  if (private_.empty()) {
    public_ = full_;
  } else {
    std::vector<Triple> visible;
    visible.reserve(triples_.size() - private_.size());
    std::set_difference(triples_.begin(), triples_.end(), private_.begin(),
                        private_.end(), std::back_inserter(visible));
    Build(visible, public_);
  }
}

void KnowledgeGraph::Build(std::span<const Triple> triples, Adjacency& adj) {
  // Input is sorted by (head, relation, tail), so forward lists come out
  // sorted; backward lists need a sort.
  for (const Triple& t : triples) {
    adj.forward[Key(t.head, t.relation)].push_back(t.tail);
    adj.backward[Key(t.tail, t.relation)].push_back(t.head);
  }
  for (auto& [key, heads] : adj.backward) Normalize(heads);
}

bool KnowledgeGraph::Contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

bool KnowledgeGraph::IsPrivate(const Triple& t) const {
  return std::binary_search(private_.begin(), private_.end(), t);
}

std::vector<Triple> KnowledgeGraph::AttributeTriples() const {
  std::vector<Triple> out;
  for (const Triple& t : triples_) {
    if (vocabulary_->Kind(t.relation) == RelationKind::kAttribute) {
      out.push_back(t);
    }
  }
  return out;
}

std::span<const VertexId> KnowledgeGraph::Neighbors(VertexId v, RelationId r,
                                                    Direction dir,
                                                    View view) const {
  if (!vocabulary_->Contains(v)) {
    throw NotFound("Neighbors: unknown vertex id " + std::to_string(Index(v)));
  }
  if (!vocabulary_->Contains(r)) {
    throw NotFound("Neighbors: unknown relation id " +
                   std::to_string(Index(r)));
  }
  const Adjacency& adj = view == View::kFull ? full_ : public_;
  const auto& index = dir == Direction::kForward ? adj.forward : adj.backward;
  auto it = index.find(Key(v, r));
  if (it == index.end()) return {};
  return it->second;
}

KnowledgeGraph MarkPrivate(const KnowledgeGraph& g,
                           std::span<const Triple> triples) {
  std::vector<Triple> all(g.triples().begin(), g.triples().end());
  return KnowledgeGraph(g.shared_vocabulary(), std::move(all),
                        std::vector<Triple>(triples.begin(), triples.end()));
}

KnowledgeGraph PublicView(const KnowledgeGraph& g) {
  std::vector<Triple> visible;
  std::set_difference(g.triples().begin(), g.triples().end(),
                      g.private_triples().begin(), g.private_triples().end(),
                      std::back_inserter(visible));
  return KnowledgeGraph(g.shared_vocabulary(), std::move(visible));
}

}  // namespace ngdb
