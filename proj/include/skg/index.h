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

#ifndef SKG_INDEX_H_
#define SKG_INDEX_H_

#include <map>
#include <string>
#include <vector>

#include "skg/backend.h"
#include "skg/corpus.h"
#include "skg/lexicon.h"

namespace skg {

// Inverted index over corpus records: lemma -> sorted record ids, plus the
// record store. Immutable after build; safe for concurrent readers.
struct ConceptIndex {
  std::map<std::string, std::vector<std::string>> postings;
  std::map<std::string, CorpusRecord> store;

  bool empty() const { return store.empty(); }
};

// Throws ValidationError on duplicate record ids.
ConceptIndex build_index(const std::vector<CorpusRecord>& corpus);

// Picks the stored graph maximizing, lexicographically: (1) requested
// concepts covered by its node lemmas, (2) overlap between the request
// context tokens and the record's context+sentence tokens, (3) fewer nodes,
// (4) smaller record id. When no record covers any requested concept the
// result is a fallback star graph over the requested concepts: the first
// (lexicographic) requested verb becomes the hub with ARG1 edges, or the
// first concept with "other" edges when no verb is present.
ImaginationResult retrieval_imagine(const ConceptIndex& index,
                                    const ImaginationRequest& request,
                                    const Lexicon& verbs);

// The fallback star graph alone (exposed for tests and the oracle).
SceneGraph fallback_star(const std::set<Concept>& concepts,
                         const Lexicon& verbs);

class RetrievalBackend : public ImagineBackend {
 public:
  RetrievalBackend(ConceptIndex index, Lexicon verbs)
      : index_(std::move(index)), verbs_(std::move(verbs)) {}

  ImaginationResult imagine(const ImaginationRequest& request) override {
    return retrieval_imagine(index_, request, verbs_);
  }

  const ConceptIndex& index() const { return index_; }

 private:
  const ConceptIndex index_;
  const Lexicon verbs_;
};

}  // namespace skg

#endif  // SKG_INDEX_H_
