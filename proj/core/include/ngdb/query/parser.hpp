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

#ifndef NGDB_QUERY_PARSER_HPP_
#define NGDB_QUERY_PARSER_HPP_

#include <string>
#include <string_view>

#include "ngdb/kg/vocabulary.hpp"
#include "ngdb/query/query.hpp"

namespace ngdb {

// S-expression query language:
//
//   (a NAME)              anchor vertex
//   (p REL EXPR)          forward projection
//   (rp REL EXPR)         backward (reverse) projection
//   (i EXPR EXPR ...)     intersection, two or more operands
//   (u EXPR EXPR ...)     union, two or more operands
//
// NAME and REL are bare tokens, or double-quoted strings when they contain
// whitespace, parentheses, or quotes. Inside quotes a backslash escapes the
// next character. Negation is outside the supported fragment and is
// rejected.
//
// Throws ParseError (location = character offset) on syntax and arity
// errors, and on names that do not resolve against `vocab`.
Query ParseQuery(std::string_view text, const Vocabulary& vocab);

// Inverse of ParseQuery: ParseQuery(ToSexpr(q)) == q.
std::string ToSexpr(const Query& q, const Vocabulary& vocab);

}  // namespace ngdb

#endif  // NGDB_QUERY_PARSER_HPP_
