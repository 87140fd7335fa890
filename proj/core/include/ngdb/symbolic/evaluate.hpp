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

#ifndef NGDB_SYMBOLIC_EVALUATE_HPP_
#define NGDB_SYMBOLIC_EVALUATE_HPP_

#include <optional>
#include <string_view>

#include "ngdb/kg/graph.hpp"
#include "ngdb/kg/vertex_set.hpp"
#include "ngdb/query/query.hpp"

namespace ngdb {

using AnswerSet = VertexSet;

// Answers split by whether they can be reached without private triples.
// The two members are disjoint and their union is the full-graph answer.
struct TaggedAnswerSet {
  VertexSet public_members;
  VertexSet private_members;

  VertexSet All() const { return SetUnion(public_members, private_members); }

  friend bool operator==(const TaggedAnswerSet&,
                         const TaggedAnswerSet&) = default;
};

// How projection tags answers.
//
//  kRelaxed  an answer is public iff some derivation avoids every private
//            triple; equivalently, public answers are exactly the answers on
//            PublicView(g).
//  kStrict   additionally, everything reachable from a private input of a
//            projection is private, even when a public path also reaches it.
//
// Intersection and union combine the operands' tags the same way in both
// modes: an intersection answer is public iff it is public in every operand;
// a union answer is public iff it is public in some operand.
enum class TaggingMode { kRelaxed, kStrict };

std::string_view ModeName(TaggingMode mode);
std::optional<TaggingMode> ParseMode(std::string_view name);

// Set-semantics evaluation by graph traversal, memoized per query node.
// Throws NotFound if the query references ids outside g's vocabulary.
AnswerSet Evaluate(const KnowledgeGraph& g, const Query& q,
                   View view = View::kFull);

TaggedAnswerSet EvaluateTagged(const KnowledgeGraph& g, const Query& q,
                               TaggingMode mode = TaggingMode::kRelaxed);

}  // namespace ngdb

#endif  // NGDB_SYMBOLIC_EVALUATE_HPP_
