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

#include "ngdb/query/parser.hpp"

#include <cctype>
#include <vector>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

bool IsDelimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
         c == ')' || c == '"';
}

class Parser {
 public:
  Parser(std::string_view text, const Vocabulary& vocab)
      : text_(text), vocab_(vocab) {}

  Query ParseAll() {
    Query q = ParseExpr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return q;
  }

 private:
  [[noreturn]] void Fail(const std::string& msg) const { Fail(msg, pos_); }
  [[noreturn]] void Fail(const std::string& msg, std::size_t at) const {
    throw ParseError("query syntax error at offset " + std::to_string(at) +
                         ": " + msg,
                     at);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      Fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool PeekClose() {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == ')';
  }

  // Bare token or quoted string.
  std::string Atom() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    if (text_[pos_] == '"') {
      const std::size_t start = pos_++;
      std::string out;
      while (true) {
        if (pos_ >= text_.size()) Fail("unterminated string", start);
        char c = text_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (pos_ >= text_.size()) Fail("dangling escape", start);
          c = text_[pos_++];
        }
        out.push_back(c);
      }
      return out;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) ++pos_;
    if (pos_ == start) Fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Query ParseExpr() {
    Expect('(');
    const std::size_t op_at = (SkipSpace(), pos_);
    const std::string op = Atom();
    if (op == "a") {
      const std::size_t at = (SkipSpace(), pos_);
      const std::string name = Atom();
      auto v = vocab_.FindVertex(name);
      if (!v) Fail("unknown vertex '" + name + "'", at);
      Expect(')');
      return Query::Anchor(*v);
    }
    if (op == "p" || op == "rp") {
      const std::size_t at = (SkipSpace(), pos_);
      const std::string name = Atom();
      auto r = vocab_.FindRelation(name);
      if (!r) Fail("unknown relation '" + name + "'", at);
      Query child = ParseExpr();
      Expect(')');
      return Query::Project(
          *r, op == "p" ? Direction::kForward : Direction::kBackward,
          std::move(child));
    }
    if (op == "i" || op == "u") {
      std::vector<Query> children;
      while (!PeekClose()) {
        if (pos_ >= text_.size()) Fail("unexpected end of input");
        children.push_back(ParseExpr());
      }
      if (children.size() < 2) {
        Fail("'" + op + "' needs at least two operands, got " +
                 std::to_string(children.size()),
             op_at);
      }
      Expect(')');
      return op == "i" ? Query::Intersect(std::move(children))
                       : Query::Unite(std::move(children));
    }
    if (op == "n") Fail("negation is not supported", op_at);
    Fail("unknown operator '" + op + "'", op_at);
  }

  std::string_view text_;
  const Vocabulary& vocab_;
  std::size_t pos_ = 0;
};

std::string Quote(const std::string& name) {
  bool needs_quotes = name.empty();
  for (char c : name) {
    if (IsDelimiter(c) || c == '\\') needs_quotes = true;
  }
  if (!needs_quotes) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void Write(const Query& q, const Vocabulary& vocab, std::string& out) {
  if (const auto* a = As<AnchorNode>(q)) {
    out += "(a " + Quote(vocab.VertexName(a->vertex)) + ")";
  } else if (const auto* p = As<ProjectionNode>(q)) {
    out += p->direction == Direction::kForward ? "(p " : "(rp ";
    out += Quote(vocab.RelationName(p->relation));
    out += ' ';
    Write(p->child, vocab, out);
    out += ')';
  } else {
    const auto* n = As<IntersectionNode>(q);
    const auto& children =
        n != nullptr ? n->children : As<UnionNode>(q)->children;
    out += n != nullptr ? "(i" : "(u";
    for (const Query& c : children) {
      out += ' ';
      Write(c, vocab, out);
    }
    out += ')';
  }
}

}  // namespace

Query ParseQuery(std::string_view text, const Vocabulary& vocab) {
  return Parser(text, vocab).ParseAll();
}

std::string ToSexpr(const Query& q, const Vocabulary& vocab) {
  std::string out;
  Write(q, vocab, out);
  return out;
}

}  // namespace ngdb
