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

#include "ngdb/query/query_type.hpp"

#include <algorithm>
#include <vector>

namespace ngdb {
namespace {

// P(A)
bool IsOneHop(const Query& q) {
  const auto* p = As<ProjectionNode>(q);
  return p != nullptr && As<AnchorNode>(p->child) != nullptr;
}

// P(P(A))
bool IsTwoHop(const Query& q) {
  const auto* p = As<ProjectionNode>(q);
  return p != nullptr && IsOneHop(p->child);
}

bool AllOneHop(const std::vector<Query>& children) {
  return std::all_of(children.begin(), children.end(), IsOneHop);
}

}  // namespace

std::string_view TypeName(QueryType type) {
  switch (type) {
    case QueryType::k1p: return "1p";
    case QueryType::k2p: return "2p";
    case QueryType::k2i: return "2i";
    case QueryType::k3i: return "3i";
    case QueryType::kPi: return "pi";
    case QueryType::kIp: return "ip";
    case QueryType::k2u: return "2u";
    case QueryType::kUp: return "up";
    case QueryType::kOther: return "other";
  }
  return "other";
}

std::optional<QueryType> ParseType(std::string_view name) {
  for (QueryType t : kBenchmarkTypes) {
    if (TypeName(t) == name) return t;
  }
  if (name == "other") return QueryType::kOther;
  return std::nullopt;
}

QueryType ClassifyType(const Query& q) {
  if (IsOneHop(q)) return QueryType::k1p;
  if (IsTwoHop(q)) return QueryType::k2p;
  if (const auto* p = As<ProjectionNode>(q)) {
    if (const auto* i = As<IntersectionNode>(p->child)) {
      if (i->children.size() == 2 && AllOneHop(i->children)) {
        return QueryType::kIp;
      }
    }
    if (const auto* u = As<UnionNode>(p->child)) {
      if (u->children.size() == 2 && AllOneHop(u->children)) {
        return QueryType::kUp;
      }
    }
    return QueryType::kOther;
  }
  if (const auto* i = As<IntersectionNode>(q)) {
    const auto& c = i->children;
    if (AllOneHop(c)) {
      if (c.size() == 2) return QueryType::k2i;
      if (c.size() == 3) return QueryType::k3i;
    }
    if (c.size() == 2 && ((IsTwoHop(c[0]) && IsOneHop(c[1])) ||
                          (IsOneHop(c[0]) && IsTwoHop(c[1])))) {
      return QueryType::kPi;
    }
    return QueryType::kOther;
  }
  if (const auto* u = As<UnionNode>(q)) {
    if (u->children.size() == 2 && AllOneHop(u->children)) {
      return QueryType::k2u;
    }
  }
  return QueryType::kOther;
}

}  // namespace ngdb
