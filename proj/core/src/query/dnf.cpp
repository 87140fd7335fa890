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

#include "ngdb/query/dnf.hpp"

#include <algorithm>

namespace ngdb {
namespace {

std::vector<Query> Disjuncts(const Query& q) {
  if (!q.ContainsUnion()) return {q};
  if (const auto* p = As<ProjectionNode>(q)) {
    std::vector<Query> out;
    for (Query& d : Disjuncts(p->child)) {
      out.push_back(Query::Project(p->relation, p->direction, std::move(d)));
    }
    return out;
  }
  if (const auto* u = As<UnionNode>(q)) {
    std::vector<Query> out;
    for (const Query& c : u->children) {
      for (Query& d : Disjuncts(c)) out.push_back(std::move(d));
    }
    return out;
  }
  // Intersection: cartesian product over the children's disjunct lists.
  const auto& children = As<IntersectionNode>(q)->children;
  std::vector<std::vector<Query>> lists;
  lists.reserve(children.size());
  for (const Query& c : children) lists.push_back(Disjuncts(c));
  std::vector<std::vector<Query>> combos{{}};
  for (const auto& list : lists) {
    std::vector<std::vector<Query>> next;
    next.reserve(combos.size() * list.size());
    for (const auto& prefix : combos) {
      for (const Query& d : list) {
        next.push_back(prefix);
        next.back().push_back(d);
      }
    }
    combos = std::move(next);
  }
  std::vector<Query> out;
  out.reserve(combos.size());
  for (auto& combo : combos) out.push_back(Query::Intersect(std::move(combo)));
  return out;
}

}  // namespace

DnfQuery ToDnf(const Query& q) {
  DnfQuery dnf;
  for (Query& d : Disjuncts(q)) {
    if (std::find(dnf.disjuncts.begin(), dnf.disjuncts.end(), d) ==
        dnf.disjuncts.end()) {
      dnf.disjuncts.push_back(std::move(d));
    }
  }
  return dnf;
}

}  // namespace ngdb
