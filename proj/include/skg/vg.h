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

#ifndef SKG_VG_H_
#define SKG_VG_H_

#include <string>
#include <string_view>
#include <vector>

#include "skg/graph.h"
#include "skg/lexicon.h"

namespace skg {

// One subject/predicate/object record from a visual scene-graph export.
struct VisualTriple {
  std::string subject;
  std::string predicate;  // lowercase
  std::string object;
  bool predicate_is_verb = false;

  // Trims fields, lowercases the predicate; throws ValidationError when a
  // field is empty after trimming.
  static VisualTriple make(std::string_view subject, std::string_view predicate,
                           std::string_view object, bool predicate_is_verb);
};

// Lemma-level edge produced by the mapping rules.
struct MappedEdge {
  Concept head;
  Relation relation;
  Concept tail;
};

// Maps visual triples into the unified scene-graph schema.
//
// Rule order is fixed: a verb predicate splits into (pred, ARG0, subj) and
// (pred, ARG1, obj); then the literal table be->domain, displace->possible,
// have/of->part, with->poss; then the spatial-preposition set -> location;
// everything else -> other.
class VgMapper {
 public:
  // spatial: the location-preposition set; verbs: used to resolve the
  // predicate_is_verb flag when a record does not carry one.
  VgMapper(Lexicon spatial, Lexicon verbs);

  bool predicate_is_verb(std::string_view predicate) const {
    return verbs_.contains(predicate);
  }

  std::vector<MappedEdge> map_triple(const VisualTriple& t) const;

  // One node per distinct lemma within the record; duplicate edges collapse,
  // self-loops produced by lemma merging are dropped. Throws ValidationError
  // on empty input.
  SceneGraph map_scene_graph(const std::vector<VisualTriple>& triples) const;

 private:
  Lexicon spatial_;
  Lexicon verbs_;
};

// Default spatial-preposition set (also shipped as
// data/spatial_predicates.txt so deployments can inspect or override it).
Lexicon default_spatial_predicates();

}  // namespace skg

#endif  // SKG_VG_H_
