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

#include "skg/index.h"

#include <algorithm>

#include "skg/error.h"
#include "skg/text.h"

namespace skg {

void ImaginationRequest::validate() const {
  if (concepts.empty()) {
    throw ValidationError("imagination request needs at least one concept");
  }
  if (token_count(context) > kContextTokenLimit) {
    throw ValidationError("request context longer than " +
                          std::to_string(kContextTokenLimit) + " tokens");
  }
}

void VerbalizationRequest::validate() const {
  if (graph.empty()) {
    throw ValidationError("verbalization request needs a non-empty graph");
  }
}

ConceptIndex build_index(const std::vector<CorpusRecord>& corpus) {
  ConceptIndex index;
  for (const CorpusRecord& record : corpus) {
    if (!index.store.emplace(record.id, record).second) {
      throw ValidationError("duplicate record id in corpus: " + record.id);
    }
    for (const std::string& lemma : record.graph.node_lemma_set()) {
      index.postings[lemma].push_back(record.id);
    }
  }
  for (auto& [lemma, ids] : index.postings) {
    std::sort(ids.begin(), ids.end());
  }
  return index;
}

SceneGraph fallback_star(const std::set<Concept>& concepts,
                         const Lexicon& verbs) {
  SceneGraph graph;
  std::vector<Concept> ordered(concepts.begin(), concepts.end());
  size_t hub = 0;
  Relation spoke = Relation::Core::kOther;
  for (size_t i = 0; i < ordered.size(); ++i) {
    if (verbs.contains(ordered[i].lemma())) {
      hub = i;
      spoke = Relation::Core::kArg1;
      break;
    }
  }
  NodeId hub_id = graph.add_node(ordered[hub]);
  for (size_t i = 0; i < ordered.size(); ++i) {
    if (i == hub) continue;
    NodeId id = graph.add_node(ordered[i]);
    graph.add_edge(hub_id, spoke, id);
  }
  return graph;
}

ImaginationResult retrieval_imagine(const ConceptIndex& index,
                                    const ImaginationRequest& request,
                                    const Lexicon& verbs) {
  request.validate();

  // Candidates: every record covering at least one requested concept.
  std::set<std::string> candidate_ids;
  for (const Concept& c : request.concepts) {
    auto it = index.postings.find(c.lemma());
    if (it == index.postings.end()) continue;
    candidate_ids.insert(it->second.begin(), it->second.end());
  }

  std::set<std::string> request_tokens = token_set_lower(request.context);

  const CorpusRecord* best = nullptr;
  int best_coverage = 0;
  int best_overlap = 0;
  for (const std::string& id : candidate_ids) {
    const CorpusRecord& record = index.store.at(id);
    std::set<std::string> lemmas = record.graph.node_lemma_set();
    int coverage = 0;
    for (const Concept& c : request.concepts) {
      if (lemmas.count(c.lemma()) > 0) ++coverage;
    }
    int overlap = 0;
    if (!request_tokens.empty()) {
      std::set<std::string> record_tokens = token_set_lower(record.context);
      std::set<std::string> sentence_tokens = token_set_lower(record.sentence);
      record_tokens.insert(sentence_tokens.begin(), sentence_tokens.end());
      for (const std::string& token : request_tokens) {
        if (record_tokens.count(token) > 0) ++overlap;
      }
    }
    bool better = false;
    if (best == nullptr) {
      better = true;
    } else if (coverage != best_coverage) {
      better = coverage > best_coverage;
    } else if (overlap != best_overlap) {
      better = overlap > best_overlap;
    } else if (record.graph.node_count() != best->graph.node_count()) {
      better = record.graph.node_count() < best->graph.node_count();
    } else {
      better = record.id < best->id;
    }
    if (better) {
      best = &record;
      best_coverage = coverage;
      best_overlap = overlap;
    }
  }

  ImaginationResult result;
  if (best == nullptr || best_coverage == 0) {
    result.graph = fallback_star(request.concepts, verbs);
    result.coverage = 0;
    result.used_fallback = true;
    return result;
  }
  result.graph = best->graph;
  result.coverage = best_coverage;
  result.used_fallback = false;
  result.record_id = best->id;
  return result;
}

}  // namespace skg
