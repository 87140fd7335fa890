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

#ifndef NGDB_QUERY_QUERY_TYPE_HPP_
#define NGDB_QUERY_QUERY_TYPE_HPP_

#include <array>
#include <optional>
#include <string_view>

#include "ngdb/query/query.hpp"

namespace ngdb {

// The eight benchmark templates, P = projection, A = anchor:
//
//   1p  P(A)                2i  I(P(A), P(A))       2u  U(P(A), P(A))
//   2p  P(P(A))             3i  I(P(A), P(A), P(A)) up  P(U(P(A), P(A)))
//   pi  I(P(P(A)), P(A))    ip  P(I(P(A), P(A)))
//
// Projection direction does not affect the tag.
enum class QueryType { k1p, k2p, k2i, k3i, kPi, kIp, k2u, kUp, kOther };

inline constexpr std::array<QueryType, 8> kBenchmarkTypes = {
    QueryType::k1p, QueryType::k2p, QueryType::k2i, QueryType::k3i,
    QueryType::kPi, QueryType::kIp, QueryType::k2u, QueryType::kUp};

std::string_view TypeName(QueryType type);
std::optional<QueryType> ParseType(std::string_view name);

// Pure function of tree shape; invariant under reordering of intersection
// and union operands.
QueryType ClassifyType(const Query& q);

}  // namespace ngdb

#endif  // NGDB_QUERY_QUERY_TYPE_HPP_
