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

#include "ngdb/symbolic/evaluate.hpp"

#include <unordered_map>
#include <utility>

namespace ngdb {
namespace {

VertexSet Image(const KnowledgeGraph& g, std::span<const VertexId> from,
                RelationId r, Direction dir, View view) {
  VertexSet out;
  for (VertexId v : from) {
    auto next = g.Neighbors(v, r, dir, view);
    out.insert(out.end(), next.begin(), next.end());
  }
  Normalize(out);
  return out;
}

class Evaluator {
 public:
  Evaluator(const KnowledgeGraph& g, View view) : g_(g), view_(view) {}

  const VertexSet& Eval(const Query& q) {
    if (auto it = memo_.find(q.id()); it != memo_.end()) return it->second;
    VertexSet result;
    if (const auto* a = As<AnchorNode>(q)) {
      if (!g_.vocabulary().Contains(a->vertex)) ValidateQuery(q, g_.vocabulary());
      result = {a->vertex};
    } else if (const auto* p = As<ProjectionNode>(q)) {
      result = Image(g_, Eval(p->child), p->relation, p->direction, view_);
    } else if (const auto* n = As<IntersectionNode>(q)) {
      result = Eval(n->children.front());
      for (std::size_t i = 1; i < n->children.size(); ++i) {
        result = SetIntersection(result, Eval(n->children[i]));
      }
    } else {
      for (const Query& c : As<UnionNode>(q)->children) {
        result = SetUnion(result, Eval(c));
      }
    }
    return memo_.emplace(q.id(), std::move(result)).first->second;
  }

 private:
  const KnowledgeGraph& g_;
  View view_;
  std::unordered_map<const void*, VertexSet> memo_;
};

// Per node: every answer, and the subset tagged public.
struct Tagged {
  VertexSet all;
  VertexSet pub;
};

class TaggingEvaluator {
 public:
  TaggingEvaluator(const KnowledgeGraph& g, TaggingMode mode)
      : g_(g), mode_(mode) {}

  const Tagged& Eval(const Query& q) {
    if (auto it = memo_.find(q.id()); it != memo_.end()) return it->second;
    Tagged t;
    if (const auto* a = As<AnchorNode>(q)) {
      if (!g_.vocabulary().Contains(a->vertex)) ValidateQuery(q, g_.vocabulary());
      t.all = {a->vertex};
      t.pub = t.all;
    } else if (const auto* p = As<ProjectionNode>(q)) {
      const Tagged& in = Eval(p->child);
      t.all = Image(g_, in.all, p->relation, p->direction, View::kFull);
      t.pub = Image(g_, in.pub, p->relation, p->direction, View::kPublic);
      if (mode_ == TaggingMode::kStrict) {
        const VertexSet private_in = SetDifference(in.all, in.pub);
        const VertexSet exposed =
            Image(g_, private_in, p->relation, p->direction, View::kFull);
        t.pub = SetDifference(t.pub, exposed);
      }
    } else if (const auto* n = As<IntersectionNode>(q)) {
      t = Eval(n->children.front());
      for (std::size_t i = 1; i < n->children.size(); ++i) {
        const Tagged& c = Eval(n->children[i]);
        t.all = SetIntersection(t.all, c.all);
        t.pub = SetIntersection(t.pub, c.pub);
      }
    } else {
      for (const Query& child : As<UnionNode>(q)->children) {
        const Tagged& c = Eval(child);
        t.all = SetUnion(t.all, c.all);
        t.pub = SetUnion(t.pub, c.pub);
      }
    }
    return memo_.emplace(q.id(), std::move(t)).first->second;
  }

 private:
  const KnowledgeGraph& g_;
  TaggingMode mode_;
  std::unordered_map<const void*, Tagged> memo_;
};

}  // namespace

std::string_view ModeName(TaggingMode mode) {
  return mode == TaggingMode::kStrict ? "strict" : "relaxed";
}

std::optional<TaggingMode> ParseMode(std::string_view name) {
  if (name == "relaxed") return TaggingMode::kRelaxed;
  if (name == "strict") return TaggingMode::kStrict;
  return std::nullopt;
}

AnswerSet Evaluate(const KnowledgeGraph& g, const Query& q, View view) {
  return Evaluator(g, view).Eval(q);
}

TaggedAnswerSet EvaluateTagged(const KnowledgeGraph& g, const Query& q,
                               TaggingMode mode) {
  TaggingEvaluator evaluator(g, mode);
  const Tagged& t = evaluator.Eval(q);
  return {t.pub, SetDifference(t.all, t.pub)};
}

}  // namespace ngdb
