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

#ifndef NGDB_KG_IDS_HPP_
#define NGDB_KG_IDS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace ngdb {

// Dense handles, contiguous from 0 within one Vocabulary.
enum class VertexId : std::uint32_t {};
enum class RelationId : std::uint32_t {};

constexpr std::size_t Index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t Index(RelationId r) { return static_cast<std::size_t>(r); }

constexpr VertexId MakeVertexId(std::size_t i) {
  return static_cast<VertexId>(static_cast<std::uint32_t>(i));
}
constexpr RelationId MakeRelationId(std::size_t i) {
  return static_cast<RelationId>(static_cast<std::uint32_t>(i));
}

enum class RelationKind { kEntityRelation, kAttribute };

enum class Direction { kForward, kBackward };

// Which triples a traversal may use.
enum class View { kFull, kPublic };

struct Triple {
  VertexId head;
  RelationId relation;
  VertexId tail;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t h = static_cast<std::uint64_t>(t.head);
    h = h * 0x100000001b3ULL ^ static_cast<std::uint64_t>(t.relation);
    h = h * 0x100000001b3ULL ^ static_cast<std::uint64_t>(t.tail);
    return std::hash<std::uint64_t>{}(h);
  }
};

}  // namespace ngdb

#endif  // NGDB_KG_IDS_HPP_
