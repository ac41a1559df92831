// Copyright 2025 The skg-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skg/vg.h"

#include <map>

#include "skg/error.h"
#include "skg/text.h"

namespace skg {

namespace {

std::string trim_copy(std::string_view s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

VisualTriple VisualTriple::make(std::string_view subject,
                                std::string_view predicate,
                                std::string_view object,
                                bool predicate_is_verb) {
  VisualTriple t;
  t.subject = trim_copy(subject);
  t.predicate = to_lower(trim_copy(predicate));
  t.object = trim_copy(object);
  t.predicate_is_verb = predicate_is_verb;
  if (t.subject.empty() || t.predicate.empty() || t.object.empty()) {
    throw ValidationError("visual triple fields must be non-empty");
  }
  return t;
}

VgMapper::VgMapper(Lexicon spatial, Lexicon verbs)
    : spatial_(std::move(spatial)), verbs_(std::move(verbs)) {}

std::vector<MappedEdge> VgMapper::map_triple(const VisualTriple& t) const {
  Concept subj = Concept::sanitized(t.subject);
  Concept obj = Concept::sanitized(t.object);
  if (t.predicate_is_verb) {
    Concept pred = Concept::sanitized(t.predicate);
    return {{pred, Relation::Core::kArg0, subj},
            {pred, Relation::Core::kArg1, obj}};
  }
  const std::string& p = t.predicate;
  Relation rel = Relation::Core::kOther;
  if (p == "be") {
    rel = Relation::Core::kDomain;
  } else if (p == "displace") {
    rel = Relation::Core::kPossible;
  } else if (p == "have" || p == "of") {
    rel = Relation::Core::kPart;
  } else if (p == "with") {
    rel = Relation::Core::kPoss;
  } else if (spatial_.contains(p)) {
    rel = Relation::Core::kLocation;
  }
  return {{subj, rel, obj}};
}

SceneGraph VgMapper::map_scene_graph(
    const std::vector<VisualTriple>& triples) const {
  if (triples.empty()) {
    throw ValidationError("cannot map an empty triple list");
  }
  SceneGraph graph;
  std::map<std::string, NodeId> by_lemma;
  auto node_for = [&](const Concept& c) {
    auto it = by_lemma.find(c.lemma());
    if (it != by_lemma.end()) return it->second;
    NodeId id = graph.add_node(c);
    by_lemma.emplace(c.lemma(), id);
    return id;
  };
  for (const VisualTriple& t : triples) {
    for (const MappedEdge& edge : map_triple(t)) {
      NodeId head = node_for(edge.head);
      NodeId tail = node_for(edge.tail);
      // Lemma merging can produce self-loops ((light, near, light)); they
      // cannot be represented and are dropped like duplicates.
      if (head == tail) continue;
      if (!graph.has_edge(head, edge.relation, tail)) {
        graph.add_edge(head, edge.relation, tail);
      }
    }
  }
  return graph;
}

Lexicon default_spatial_predicates() {
  return Lexicon(std::set<std::string>{"on", "behind", "at", "under", "along",
                                       "in", "near", "above", "below",
                                       "beside", "inside", "over"});
}

}  // namespace skg
