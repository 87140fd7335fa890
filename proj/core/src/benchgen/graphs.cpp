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

#include "ngdb/benchgen/graphs.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ngdb/common/error.hpp"
#include "ngdb/common/rng.hpp"
#include "ngdb/kg/vocabulary.hpp"

namespace ngdb {
namespace {

struct Builder {
  std::shared_ptr<Vocabulary> vocab;
  std::vector<Triple> triples;

  explicit Builder(const Schema& schema)
      : vocab(std::make_shared<Vocabulary>(schema)) {}

  VertexId V(std::string_view name) { return vocab->InternVertex(name); }

  void Add(std::string_view head, std::string_view rel, std::string_view tail) {
    triples.push_back({V(head), vocab->Relation(rel), V(tail)});
  }
  void Add(VertexId head, RelationId rel, VertexId tail) {
    triples.push_back({head, rel, tail});
  }
};

std::vector<VertexId> Intern(Builder& b, std::string_view prefix,
                             std::size_t n) {
  std::vector<VertexId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(b.V(std::string(prefix) + std::to_string(i)));
  }
  return out;
}

}  // namespace

KnowledgeGraph ToyGraph() {
  Schema schema;
  schema.Declare("WorksAt", RelationKind::kEntityRelation);
  schema.Declare("LocatedIn", RelationKind::kEntityRelation);
  schema.Declare("Advised", RelationKind::kEntityRelation);
  schema.Declare("LiveIn", RelationKind::kAttribute);
  schema.Declare("WinAward", RelationKind::kAttribute);
  schema.Declare("Field", RelationKind::kAttribute);
  Builder b(schema);
  b.Add("Hinton", "WorksAt", "UofT");
  b.Add("UofT", "LocatedIn", "Toronto");
  b.Add("Hinton", "LiveIn", "Toronto");
  b.Add("Hinton", "WinAward", "TuringAward");
  b.Add("Hinton", "Field", "DeepLearning");
  b.Add("Hinton", "Advised", "LeCun");
  b.Add("LeCun", "WorksAt", "NYU");
  b.Add("NYU", "LocatedIn", "NewYork");
  b.Add("LeCun", "LiveIn", "NewYork");
  b.Add("LeCun", "WinAward", "TuringAward");
  b.Add("LeCun", "Field", "DeepLearning");
  b.Add("Bengio", "WorksAt", "UdeM");
  b.Add("UdeM", "LocatedIn", "Montreal");
  b.Add("Bengio", "LiveIn", "Montreal");
  b.Add("Bengio", "WinAward", "TuringAward");
  b.Add("Bengio", "Field", "DeepLearning");
  b.Add("Sutskever", "WorksAt", "UofT");
  b.Add("Sutskever", "LiveIn", "Toronto");
  b.Add("Hinton", "Advised", "Sutskever");
  const Triple secret{b.vocab->Vertex("Hinton"), b.vocab->Relation("LiveIn"),
                      b.vocab->Vertex("Toronto")};
  return KnowledgeGraph(std::move(b.vocab), std::move(b.triples), {secret});
}

KnowledgeGraph SyntheticGraph(const SyntheticConfig& c, std::uint64_t seed) {
  if (c.people == 0 || c.organizations == 0 || c.cities == 0 ||
      c.countries == 0 || c.fields == 0) {
    throw InvalidArgument("synthetic graph needs at least one of each type");
  }
  if (!(c.attribute_coherence >= 0.0 && c.attribute_coherence <= 1.0)) {
    throw InvalidArgument("attribute_coherence must lie in [0, 1]");
  }
  Schema schema;
  schema.Declare("WorksAt", RelationKind::kEntityRelation);
  schema.Declare("LocatedIn", RelationKind::kEntityRelation);
  schema.Declare("InCountry", RelationKind::kEntityRelation);
  schema.Declare("FieldOf", RelationKind::kEntityRelation);
  schema.Declare("Collaborator", RelationKind::kEntityRelation);
  schema.Declare("Advisor", RelationKind::kEntityRelation);
  schema.Declare("LiveIn", RelationKind::kAttribute);
  schema.Declare("BornIn", RelationKind::kAttribute);
  schema.Declare("ResearchField", RelationKind::kAttribute);
  Builder b(schema);
  const auto rel = [&](std::string_view name) {
    return b.vocab->Relation(name);
  };

  Rng rng(seed);
  const auto people = Intern(b, "person_", c.people);
  const auto orgs = Intern(b, "org_", c.organizations);
  const auto cities = Intern(b, "city_", c.cities);
  const auto countries = Intern(b, "country_", c.countries);
  const auto fields = Intern(b, "field_", c.fields);

  std::vector<std::size_t> city_country(cities.size());
  for (std::size_t i = 0; i < cities.size(); ++i) {
    city_country[i] = i % countries.size();
    b.Add(cities[i], rel("InCountry"), countries[city_country[i]]);
  }
  std::vector<std::size_t> org_city(orgs.size()), org_field(orgs.size());
  for (std::size_t i = 0; i < orgs.size(); ++i) {
    org_city[i] = rng.UniformIndex(cities.size());
    org_field[i] = rng.UniformIndex(fields.size());
    b.Add(orgs[i], rel("LocatedIn"), cities[org_city[i]]);
    b.Add(orgs[i], rel("FieldOf"), fields[org_field[i]]);
  }

  std::vector<std::size_t> employer(people.size());
  std::vector<std::vector<std::size_t>> staff(orgs.size());
  for (std::size_t p = 0; p < people.size(); ++p) {
    employer[p] = p < orgs.size() ? p : rng.UniformIndex(orgs.size());
    staff[employer[p]].push_back(p);
    b.Add(people[p], rel("WorksAt"), orgs[employer[p]]);
  }
  const double coherence = c.attribute_coherence;
  for (std::size_t p = 0; p < people.size(); ++p) {
    const std::size_t org = employer[p];
    const std::size_t live = rng.Bernoulli(coherence)
                                 ? org_city[org]
                                 : rng.UniformIndex(cities.size());
    b.Add(people[p], rel("LiveIn"), cities[live]);
    // Birthplace shares the country of residence more often than not.
    std::size_t born = rng.UniformIndex(cities.size());
    if (rng.Bernoulli(coherence)) {
      std::vector<std::size_t> same;
      for (std::size_t i = 0; i < cities.size(); ++i) {
        if (city_country[i] == city_country[live]) same.push_back(i);
      }
      born = same[rng.UniformIndex(same.size())];
    }
    b.Add(people[p], rel("BornIn"), cities[born]);
    const std::size_t field = rng.Bernoulli(coherence)
                                  ? org_field[org]
                                  : rng.UniformIndex(fields.size());
    b.Add(people[p], rel("ResearchField"), fields[field]);
  }
  for (std::size_t p = 0; p < people.size(); ++p) {
    const auto& team = staff[employer[p]];
    for (std::size_t k = 0; k < c.collaborators_per_person; ++k) {
      // Mostly colleagues, occasionally anyone.
      const std::size_t q = (team.size() > 1 && rng.Bernoulli(coherence))
                                ? team[rng.UniformIndex(team.size())]
                                : rng.UniformIndex(people.size());
      if (q != p) b.Add(people[p], rel("Collaborator"), people[q]);
    }
  }
  for (std::size_t k = 0; k < c.advisors; ++k) {
    const std::size_t student = rng.UniformIndex(people.size());
    const auto& team = staff[employer[student]];
    const std::size_t advisor = team[rng.UniformIndex(team.size())];
    if (advisor != student) {
      b.Add(people[student], rel("Advisor"), people[advisor]);
    }
  }
  return KnowledgeGraph(std::move(b.vocab), std::move(b.triples));
}

}  // namespace ngdb
