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

#include "ngdb/symbolic/oracle.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

struct Atom {
  RelationId relation;
  int head_var;
  int tail_var;
};

// One conjunction c_i: atoms plus constant bindings (anchor variables).
struct Conjunction {
  std::vector<Atom> atoms;
  std::vector<std::pair<int, VertexId>> bindings;
};

class Rewriter {
 public:
  // Conjunctions describing `q` with its answer bound to variable `out`.
  std::vector<Conjunction> Expand(const Query& q, int out) {
    if (const auto* a = As<AnchorNode>(q)) {
      Conjunction c;
      c.bindings.emplace_back(out, a->vertex);
      return {c};
    }
    if (const auto* p = As<ProjectionNode>(q)) {
      const int in = next_var_++;
      std::vector<Conjunction> result = Expand(p->child, in);
      for (Conjunction& c : result) {
        if (p->direction == Direction::kForward) {
          c.atoms.push_back({p->relation, in, out});
        } else {
          c.atoms.push_back({p->relation, out, in});
        }
      }
      return result;
    }
    if (const auto* u = As<UnionNode>(q)) {
      std::vector<Conjunction> result;
      for (const Query& child : u->children) {
        for (Conjunction& c : Expand(child, out)) result.push_back(std::move(c));
      }
      return result;
    }
    // Conjunction of operands sharing the output variable.
    std::vector<Conjunction> result{Conjunction{}};
    for (const Query& child : As<IntersectionNode>(q)->children) {
      std::vector<Conjunction> part = Expand(child, out);
      std::vector<Conjunction> merged;
      for (const Conjunction& left : result) {
        for (const Conjunction& right : part) {
          Conjunction c = left;
          c.atoms.insert(c.atoms.end(), right.atoms.begin(), right.atoms.end());
          c.bindings.insert(c.bindings.end(), right.bindings.begin(),
                            right.bindings.end());
          merged.push_back(std::move(c));
        }
      }
      result = std::move(merged);
    }
    return result;
  }

  int num_vars() const { return next_var_; }
  int NewVar() { return next_var_++; }

 private:
  int next_var_ = 0;
};

void CheckIds(const Query& q, const Vocabulary& vocab) {
  ValidateQuery(q, vocab);
}

}  // namespace

AnswerSet BruteForceOracle(const KnowledgeGraph& g, const Query& q) {
  const std::size_t n = g.num_vertices();
  if (n > kOracleMaxVertices) {
    throw InvalidArgument("BruteForceOracle: graph has " + std::to_string(n) +
                          " vertices, limit is " +
                          std::to_string(kOracleMaxVertices));
  }
  CheckIds(q, g.vocabulary());

  std::unordered_set<Triple, TripleHash> edges(g.triples().begin(),
                                               g.triples().end());
  Rewriter rewriter;
  const int target = rewriter.NewVar();
  const std::vector<Conjunction> conjunctions = rewriter.Expand(q, target);
  const int num_vars = rewriter.num_vars();

  std::vector<bool> is_answer(n, false);
  for (const Conjunction& c : conjunctions) {
    // Resolve constant bindings; conflicting constants make c unsatisfiable.
    std::vector<std::optional<VertexId>> fixed(num_vars);
    bool satisfiable = true;
    for (const auto& [var, vertex] : c.bindings) {
      if (fixed[var] && *fixed[var] != vertex) satisfiable = false;
      fixed[var] = vertex;
    }
    if (!satisfiable) continue;

    std::vector<int> used{target};
    for (const Atom& a : c.atoms) {
      used.push_back(a.head_var);
      used.push_back(a.tail_var);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<int> free_vars;
    for (int v : used) {
      if (!fixed[v]) free_vars.push_back(v);
    }

    double combos = 1.0;
    for (std::size_t i = 0; i < free_vars.size(); ++i) {
      combos *= static_cast<double>(n);
    }
    if (combos > static_cast<double>(kOracleMaxAssignments)) {
      throw InvalidArgument("BruteForceOracle: " +
                            std::to_string(free_vars.size()) +
                            " free variables exceed the enumeration budget");
    }
    if (!free_vars.empty() && n == 0) continue;

    std::vector<VertexId> value(num_vars, MakeVertexId(0));
    for (int v : used) {
      if (fixed[v]) value[v] = *fixed[v];
    }
    // Odometer over all assignments to the free variables.
    std::vector<std::size_t> digit(free_vars.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < free_vars.size(); ++i) {
        value[free_vars[i]] = MakeVertexId(digit[i]);
      }
      bool ok = true;
      for (const Atom& a : c.atoms) {
        if (!edges.contains({value[a.head_var], a.relation,
                             value[a.tail_var]})) {
          ok = false;
          break;
        }
      }
      if (ok) is_answer[Index(value[target])] = true;

      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == n) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }

  AnswerSet out;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_answer[v]) out.push_back(MakeVertexId(v));
  }
  return out;
}

}  // namespace ngdb
