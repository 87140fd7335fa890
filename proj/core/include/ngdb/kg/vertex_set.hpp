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

#ifndef NGDB_KG_VERTEX_SET_HPP_
#define NGDB_KG_VERTEX_SET_HPP_

#include <algorithm>
#include <iterator>
#include <span>
#include <vector>

#include "ngdb/kg/ids.hpp"

namespace ngdb {

// Sorted, duplicate-free vector of vertices. All helpers below preserve the
// ordering invariant.
using VertexSet = std::vector<VertexId>;

inline void Normalize(VertexSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool Contains(std::span<const VertexId> s, VertexId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet SetUnion(std::span<const VertexId> a,
                          std::span<const VertexId> b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline VertexSet SetIntersection(std::span<const VertexId> a,
                                 std::span<const VertexId> b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline VertexSet SetDifference(std::span<const VertexId> a,
                               std::span<const VertexId> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline bool IsSubset(std::span<const VertexId> sub,
                     std::span<const VertexId> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace ngdb

#endif  // NGDB_KG_VERTEX_SET_HPP_
