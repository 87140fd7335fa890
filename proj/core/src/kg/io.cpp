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

#include "ngdb/kg/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// Calls `fn(fields, line_number)` for every non-comment, non-blank line.
template <typename Fn>
void ForEachRecord(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    fn(SplitTabs(line), line_no);
  }
}

RelationKind ParseKind(std::string_view text, std::size_t line_no) {
  if (text == "rel") return RelationKind::kEntityRelation;
  if (text == "attr") return RelationKind::kAttribute;
  throw ParseError("line " + std::to_string(line_no) +
                       ": relation kind must be 'rel' or 'attr', got '" +
                       std::string(text) + "'",
                   line_no);
}

void ExpectFields(const std::vector<std::string_view>& fields,
                  std::size_t expected, std::size_t line_no) {
  if (fields.size() != expected) {
    throw ParseError("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(expected) + " tab-separated fields, got " +
                         std::to_string(fields.size()),
                     line_no);
  }
  for (std::string_view f : fields) {
    if (f.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty field",
                       line_no);
    }
  }
}

}  // namespace

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view KindName(RelationKind kind) {
  return kind == RelationKind::kAttribute ? "attr" : "rel";
}

Schema ReadSchema(std::istream& in) {
  Schema schema;
  ForEachRecord(in, [&](const std::vector<std::string_view>& f,
                        std::size_t line_no) {
    ExpectFields(f, 2, line_no);
    const RelationKind kind = ParseKind(f[1], line_no);
    if (schema.Find(f[0])) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": relation declared twice: " + std::string(f[0]),
                       line_no);
    }
    schema.Declare(f[0], kind);
  });
  return schema;
}

Schema LoadSchema(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadSchema(in);
}

void WriteSchema(std::ostream& out, const Vocabulary& vocab) {
  for (std::size_t i = 0; i < vocab.num_relations(); ++i) {
    const RelationId r = MakeRelationId(i);
    out << vocab.RelationName(r) << '\t' << KindName(vocab.Kind(r)) << '\n';
  }
}

KnowledgeGraph ReadTriples(std::istream& in, const Schema& schema) {
  auto vocab = std::make_shared<Vocabulary>(schema);
  std::vector<Triple> triples;
  ForEachRecord(in, [&](const std::vector<std::string_view>& f,
                        std::size_t line_no) {
    ExpectFields(f, 3, line_no);
    auto rel = vocab->FindRelation(f[1]);
    if (!rel) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": relation missing from schema: " +
                           std::string(f[1]),
                       line_no);
    }
    const VertexId head = vocab->InternVertex(f[0]);
    const VertexId tail = vocab->InternVertex(f[2]);
    triples.push_back({head, *rel, tail});
  });
  return KnowledgeGraph(std::move(vocab), std::move(triples));
}

KnowledgeGraph LoadTriples(const std::filesystem::path& path,
                           const Schema& schema) {
  auto in = OpenForRead(path);
  return ReadTriples(in, schema);
}

std::vector<Triple> ReadTripleSet(std::istream& in, const Vocabulary& vocab) {
  std::vector<Triple> triples;
  ForEachRecord(in, [&](const std::vector<std::string_view>& f,
                        std::size_t line_no) {
    ExpectFields(f, 3, line_no);
    auto head = vocab.FindVertex(f[0]);
    auto rel = vocab.FindRelation(f[1]);
    auto tail = vocab.FindVertex(f[2]);
    if (!head || !rel || !tail) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": triple references an unknown name",
                       line_no);
    }
    triples.push_back({*head, *rel, *tail});
  });
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  return triples;
}

std::vector<Triple> LoadTripleSet(const std::filesystem::path& path,
                                  const Vocabulary& vocab) {
  auto in = OpenForRead(path);
  return ReadTripleSet(in, vocab);
}

void WriteTriples(std::ostream& out, std::span<const Triple> triples,
                  const Vocabulary& vocab) {
  for (const Triple& t : triples) {
    out << vocab.VertexName(t.head) << '\t' << vocab.RelationName(t.relation)
        << '\t' << vocab.VertexName(t.tail) << '\n';
  }
}

void SaveTriples(const std::filesystem::path& path,
                 std::span<const Triple> triples, const Vocabulary& vocab) {
  auto out = OpenForWrite(path);
  WriteTriples(out, triples, vocab);
}

void SaveVocabulary(const std::filesystem::path& dir, const Vocabulary& vocab) {
  {
    auto out = OpenForWrite(dir / "vertices.tsv");
    for (std::size_t i = 0; i < vocab.num_vertices(); ++i) {
      out << vocab.VertexName(MakeVertexId(i)) << '\n';
    }
  }
  auto out = OpenForWrite(dir / "relations.tsv");
  WriteSchema(out, vocab);
}

std::shared_ptr<const Vocabulary> LoadVocabulary(
    const std::filesystem::path& dir) {
  auto schema_in = OpenForRead(dir / "relations.tsv");
  auto vocab = std::make_shared<Vocabulary>(ReadSchema(schema_in));
  auto in = OpenForRead(dir / "vertices.tsv");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      throw ParseError("vertices.tsv line " + std::to_string(line_no) +
                           ": empty vertex name",
                       line_no);
    }
    const std::size_t before = vocab->num_vertices();
    vocab->InternVertex(line);
    if (vocab->num_vertices() == before) {
      throw ParseError("vertices.tsv line " + std::to_string(line_no) +
                           ": duplicate vertex " + line,
                       line_no);
    }
  }
  return vocab;
}

}  // namespace ngdb
