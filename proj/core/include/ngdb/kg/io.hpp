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

#ifndef NGDB_KG_IO_HPP_
#define NGDB_KG_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngdb/kg/graph.hpp"
#include "ngdb/kg/vocabulary.hpp"

namespace ngdb {

// Flat-file formats (UTF-8, '\n'-terminated, '#' lines and blank lines are
// skipped):
//
//   schema file     relation<TAB>{rel|attr}
//   triple file     head<TAB>relation<TAB>tail
//   vertex file     name                      (line i holds vertex id i)
//   relation file   relation<TAB>{rel|attr}   (line i holds relation id i)
//
// Parse failures throw ParseError carrying the 1-based line number.

Schema ReadSchema(std::istream& in);
Schema LoadSchema(const std::filesystem::path& path);
void WriteSchema(std::ostream& out, const Vocabulary& vocab);

// Interns vertices in order of first appearance (head before tail) and
// relations in schema order, so loading the same file twice yields the same
// ids. Duplicate lines collapse to one triple. The private set is empty.
KnowledgeGraph ReadTriples(std::istream& in, const Schema& schema);
KnowledgeGraph LoadTriples(const std::filesystem::path& path,
                           const Schema& schema);

// Reads triples whose names must already exist in `vocab` (NotFound-style
// ParseError otherwise). Used for private-edge files and split buckets.
std::vector<Triple> ReadTripleSet(std::istream& in, const Vocabulary& vocab);
std::vector<Triple> LoadTripleSet(const std::filesystem::path& path,
                                  const Vocabulary& vocab);

void WriteTriples(std::ostream& out, std::span<const Triple> triples,
                  const Vocabulary& vocab);
void SaveTriples(const std::filesystem::path& path,
                 std::span<const Triple> triples, const Vocabulary& vocab);

// Vocabulary round trip preserving ids exactly.
void SaveVocabulary(const std::filesystem::path& dir, const Vocabulary& vocab);
std::shared_ptr<const Vocabulary> LoadVocabulary(
    const std::filesystem::path& dir);

std::string_view KindName(RelationKind kind);

// Splits on '\t' without trimming.
std::vector<std::string_view> SplitTabs(std::string_view line);

}  // namespace ngdb

#endif  // NGDB_KG_IO_HPP_
