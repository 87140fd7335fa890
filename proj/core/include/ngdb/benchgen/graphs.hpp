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

#ifndef NGDB_BENCHGEN_GRAPHS_HPP_
#define NGDB_BENCHGEN_GRAPHS_HPP_

#include <cstddef>
#include <cstdint>

#include "ngdb/kg/graph.hpp"

namespace ngdb {

// Small researcher graph in which (Hinton, LiveIn, Toronto) is the only
// private triple. Hinton works at UofT, which is located in Toronto, so the
// private fact is inferable from public structure.
KnowledgeGraph ToyGraph();

// Seeded desk-scale graph of people, organizations, cities, countries, and
// research fields. Attribute values follow the organization a person works
// at with high probability, so attributes removed from the graph remain
// predictable from the rest of it.
struct SyntheticConfig {
  std::size_t people = 220;
  std::size_t organizations = 30;
  std::size_t cities = 20;
  std::size_t countries = 5;
  std::size_t fields = 15;
  std::size_t collaborators_per_person = 4;
  std::size_t advisors = 150;
  double attribute_coherence = 0.85;  // P(attribute follows the employer)
};

// Relations: WorksAt, LocatedIn, InCountry, FieldOf, Collaborator,
// Advisor (entity relations); LiveIn, BornIn, ResearchField (attributes).
// No private triples are marked.
KnowledgeGraph SyntheticGraph(const SyntheticConfig& config,
                              std::uint64_t seed);

}  // namespace ngdb

#endif  // NGDB_BENCHGEN_GRAPHS_HPP_
