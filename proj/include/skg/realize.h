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

#ifndef SKG_REALIZE_H_
#define SKG_REALIZE_H_

#include <string>

#include "skg/backend.h"

namespace skg {

// Which segments the assembled model input carries. The graph segment is
// always present; the default (everything) is the strongest configuration
// and the only one used by the pipeline itself.
struct InputSegments {
  bool context = true;
  bool concepts = true;
};

// The exact sequence a sentence generator conditions on: context (or
// "none"), separator, the concept set in lexicographic order, separator,
// the serialized graph. Dropped segments take their separator with them.
// Byte-deterministic. Throws GraphError when the graph cannot be
// serialized (empty / disconnected).
std::string assemble_input(const VerbalizationRequest& request,
                           InputSegments segments = {});

// Deterministic template realizer: a rule-based sentence for desk-scale
// runs without a neural backend. Traverses the spanning tree from the
// canonical root; predicate nodes render as subject / inflected verb /
// objects followed by modifier phrases in a fixed relation order
// (location "in", time "when", instrument "with", purpose "to", poss "'s",
// part "of", medium "on", anything else "with"); nested predicates recurse
// as relative clauses; revisited nodes render as "the <lemma>". Output is
// capitalized and terminated with ".". Throws GraphError when the graph is
// empty or disconnected.
std::string template_realize(const SceneGraph& graph);

// Third-person singular inflection used by the realizer (irregular table
// plus -s/-es/-ies rules).
std::string third_person(const std::string& lemma);

class TemplateVerbalizeBackend : public VerbalizeBackend {
 public:
  std::string verbalize(const VerbalizationRequest& request) override {
    request.validate();
    return template_realize(request.graph);
  }
};

}  // namespace skg

#endif  // SKG_REALIZE_H_
