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

#ifndef SKG_CORPUS_H_
#define SKG_CORPUS_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skg/graph.h"
#include "skg/lexicon.h"

namespace skg {

inline constexpr size_t kContextTokenLimit = 256;

enum class Source { kCaption, kStory, kVisual, kTask };

std::string source_name(Source source);
std::optional<Source> source_from_name(std::string_view name);

// One scene graph paired with its source sentence, context and origin tag;
// the unit of the pretraining corpus.
//
// Invariants: concept_set is a subset of the graph's node lemmas; context
// holds at most kContextTokenLimit tokens; visual records have no sentence;
// caption records have no context.
struct CorpusRecord {
  std::string id;
  Source source = Source::kCaption;
  std::string context;
  std::string sentence;
  SceneGraph graph;
  std::set<Concept> concept_set;

  // Throws ValidationError naming the violated invariant.
  void validate() const;
};

// Problems collected (not fatal) while ingesting individual records.
struct RecordIssue {
  std::string record_id;
  size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<CorpusRecord> records;
  std::vector<RecordIssue> issues;
};

// Reads a pre-parsed AMR file: JSONL {id, sentence, penman, context?,
// source?}. Graphs are decoded strictly; sense suffixes are stripped by
// construction; concept sets come from the extractor intersected with the
// graph's lemmas; contexts keep their final kContextTokenLimit tokens.
// Per-record decode failures are collected in issues; a malformed file is
// fatal (FormatError). Records decode on up to `parallelism` workers;
// output order is input order either way.
IngestResult ingest_amr(const std::string& path,
                        const ConceptExtractor& extractor,
                        Source default_source = Source::kCaption,
                        int parallelism = 1);

// One story from a downstream task file: a shared context, one concept set
// and one reference sentence per step, plus one externally parsed graph per
// sentence.
struct TaskItem {
  std::string id;
  std::string context;
  std::vector<std::set<Concept>> concept_sets;
  std::vector<std::string> sentences;
  std::vector<std::string> penman_graphs;
};

// Task-file JSONL: {id, context, concept_sets:[[...]], sentences:[...],
// penman_graphs:[...]}. Throws FormatError on structural problems,
// including a sentence/graph arity mismatch (fatal per story).
std::vector<TaskItem> load_task_file(const std::string& path);

// Expands task items into per-sentence records with source=task: record i
// carries the story context plus the gold sentences before i, truncated to
// the context limit. Sentence/graph arity mismatches are fatal.
std::vector<CorpusRecord> make_silver_records(const std::vector<TaskItem>& items);

struct FilterOutcome {
  std::vector<CorpusRecord> retained;
  size_t removed = 0;
};

// Removes every record whose node-lemma set covers (is a superset of) any
// forbidden concept set. Forbidden sets must be non-empty.
FilterOutcome filter_overlap(const std::vector<CorpusRecord>& corpus,
                             const std::vector<std::set<Concept>>& forbidden);

struct SourceStats {
  size_t records = 0;
  size_t distinct_concepts = 0;
};

struct CorpusStats {
  std::map<Source, SourceStats> per_source;
  size_t total_records = 0;
  size_t total_distinct_concepts = 0;  // union across sources, not a sum
};

CorpusStats corpus_stats(const std::vector<CorpusRecord>& corpus);

// Renders stats as an aligned table (Source / #SKGs / #Concepts plus All).
std::string format_stats_table(const CorpusStats& stats);

// Corpus persistence: JSONL {id, source, context, sentence, penman,
// concepts:[...]}. Loading re-validates every record.
void save_corpus(const std::vector<CorpusRecord>& corpus,
                 const std::string& path);
std::vector<CorpusRecord> load_corpus(const std::string& path);

}  // namespace skg

#endif  // SKG_CORPUS_H_
