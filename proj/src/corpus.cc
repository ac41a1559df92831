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

#include "skg/corpus.h"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "skg/error.h"
#include "skg/jsonl.h"
#include "skg/penman.h"
#include "skg/text.h"

namespace skg {

std::string source_name(Source source) {
  switch (source) {
    case Source::kCaption:
      return "caption";
    case Source::kStory:
      return "story";
    case Source::kVisual:
      return "visual";
    case Source::kTask:
      return "task";
  }
  return "caption";
}

std::optional<Source> source_from_name(std::string_view name) {
  if (name == "caption") return Source::kCaption;
  if (name == "story") return Source::kStory;
  if (name == "visual") return Source::kVisual;
  if (name == "task") return Source::kTask;
  return std::nullopt;
}

void CorpusRecord::validate() const {
  if (id.empty()) throw ValidationError("record id must be non-empty");
  if (graph.empty()) {
    throw ValidationError("record " + id + ": graph must be non-empty");
  }
  std::set<std::string> lemmas = graph.node_lemma_set();
  for (const Concept& c : concept_set) {
    if (lemmas.count(c.lemma()) == 0) {
      throw ValidationError("record " + id + ": concept \"" + c.lemma() +
                            "\" is not a node lemma of its graph");
    }
  }
  if (token_count(context) > kContextTokenLimit) {
    throw ValidationError("record " + id + ": context longer than " +
                          std::to_string(kContextTokenLimit) + " tokens");
  }
  if (source == Source::kVisual && !sentence.empty()) {
    throw ValidationError("record " + id +
                          ": visual records carry no sentence");
  }
  if (source == Source::kCaption && !context.empty()) {
    throw ValidationError("record " + id +
                          ": caption records carry no context");
  }
}

namespace {

std::set<Concept> restrict_to_graph(const std::set<Concept>& concepts,
                                    const SceneGraph& graph) {
  std::set<std::string> lemmas = graph.node_lemma_set();
  std::set<Concept> out;
  for (const Concept& c : concepts) {
    if (lemmas.count(c.lemma()) > 0) out.insert(c);
  }
  return out;
}

}  // namespace

IngestResult ingest_amr(const std::string& path,
                        const ConceptExtractor& extractor,
                        Source default_source, int parallelism) {
  // Structural scan first: file-shape problems are fatal and must surface
  // deterministically before any record-level work.
  struct PendingRow {
    size_t line = 0;
    CorpusRecord record;  // everything except the decoded graph
    std::string penman;
  };
  std::vector<PendingRow> rows;
  std::set<std::string> seen_ids;
  for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& object) {
    if (!object.is_object() || !object.contains("penman") ||
        !object.contains("id")) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": record needs at least {id, penman}");
    }
    PendingRow row;
    row.line = lineno;
    row.record.id = object.at("id").get<std::string>();
    if (!seen_ids.insert(row.record.id).second) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": duplicate record id \"" + row.record.id + "\"");
    }
    row.record.source = default_source;
    if (object.contains("source")) {
      auto source = source_from_name(object.at("source").get<std::string>());
      if (!source) {
        throw FormatError(path + ":" + std::to_string(lineno) +
                          ": unknown source tag");
      }
      row.record.source = *source;
    }
    if (object.contains("sentence")) {
      row.record.sentence = object.at("sentence").get<std::string>();
    }
    if (object.contains("context")) {
      row.record.context = truncate_context(
          object.at("context").get<std::string>(), kContextTokenLimit);
    }
    if (row.record.source == Source::kCaption) row.record.context.clear();
    row.penman = object.at("penman").get<std::string>();
    rows.push_back(std::move(row));
  });

  // Record-level decode/extract work is independent; spread it over
  // workers and merge back in input order.
  std::vector<std::optional<CorpusRecord>> decoded(rows.size());
  std::vector<std::optional<RecordIssue>> problems(rows.size());
  auto process = [&](size_t i) {
    PendingRow& row = rows[i];
    try {
      row.record.graph =
          penman::decode(row.penman, penman::Mode::kStrict);
      row.record.concept_set = restrict_to_graph(
          extractor.extract(row.record.sentence), row.record.graph);
      if (row.record.source == Source::kVisual) row.record.sentence.clear();
      row.record.validate();
      decoded[i] = std::move(row.record);
    } catch (const Error& e) {
      problems[i] = RecordIssue{row.record.id, row.line, e.what()};
    }
  };
  size_t workers = parallelism > 1
                       ? std::min<size_t>(static_cast<size_t>(parallelism),
                                          rows.size())
                       : 1;
  if (workers <= 1) {
    for (size_t i = 0; i < rows.size(); ++i) process(i);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          size_t i = cursor.fetch_add(1);
          if (i >= rows.size()) return;
          process(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  IngestResult result;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (decoded[i].has_value()) {
      result.records.push_back(std::move(*decoded[i]));
    } else if (problems[i].has_value()) {
      result.issues.push_back(std::move(*problems[i]));
    }
  }
  return result;
}

std::vector<TaskItem> load_task_file(const std::string& path) {
  std::vector<TaskItem> items;
  for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& object) {
    if (!object.is_object() || !object.contains("id") ||
        !object.contains("concept_sets")) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": task record needs {id, concept_sets}");
    }
    TaskItem item;
    item.id = object.at("id").get<std::string>();
    item.context = object.value("context", std::string());
    for (const auto& set_json : object.at("concept_sets")) {
      std::set<Concept> concepts;
      for (const auto& word : set_json) {
        concepts.insert(Concept(word.get<std::string>()));
      }
      if (concepts.empty()) {
        throw FormatError(path + ":" + std::to_string(lineno) +
                          ": empty concept set in story " + item.id);
      }
      item.concept_sets.push_back(std::move(concepts));
    }
    if (object.contains("sentences")) {
      item.sentences = object.at("sentences").get<std::vector<std::string>>();
    }
    if (object.contains("penman_graphs")) {
      item.penman_graphs =
          object.at("penman_graphs").get<std::vector<std::string>>();
    }
    items.push_back(std::move(item));
  });
  return items;
}

std::vector<CorpusRecord> make_silver_records(
    const std::vector<TaskItem>& items) {
  std::vector<CorpusRecord> records;
  for (const TaskItem& item : items) {
    if (item.sentences.size() != item.penman_graphs.size()) {
      throw FormatError("story " + item.id + ": " +
                        std::to_string(item.sentences.size()) +
                        " sentences but " +
                        std::to_string(item.penman_graphs.size()) + " graphs");
    }
    if (!item.concept_sets.empty() &&
        item.concept_sets.size() != item.sentences.size()) {
      throw FormatError("story " + item.id + ": " +
                        std::to_string(item.concept_sets.size()) +
                        " concept sets but " +
                        std::to_string(item.sentences.size()) + " sentences");
    }
    std::string context = item.context;
    for (size_t i = 0; i < item.sentences.size(); ++i) {
      CorpusRecord record;
      record.id = item.id + "#" + std::to_string(i);
      record.source = Source::kTask;
      record.context = truncate_context(context, kContextTokenLimit);
      record.sentence = item.sentences[i];
      record.graph = penman::decode(item.penman_graphs[i],
                                    penman::Mode::kStrict);
      if (!item.concept_sets.empty()) {
        record.concept_set =
            restrict_to_graph(item.concept_sets[i], record.graph);
      }
      record.validate();
      records.push_back(std::move(record));
      // The next step sees the gold prefix sentences as extra context.
      if (!context.empty()) context += ' ';
      context += item.sentences[i];
    }
  }
  return records;
}

FilterOutcome filter_overlap(const std::vector<CorpusRecord>& corpus,
                             const std::vector<std::set<Concept>>& forbidden) {
  for (const auto& set : forbidden) {
    if (set.empty()) {
      throw ValidationError("forbidden concept sets must be non-empty");
    }
  }
  FilterOutcome outcome;
  for (const CorpusRecord& record : corpus) {
    std::set<std::string> lemmas = record.graph.node_lemma_set();
    bool covered = false;
    for (const auto& set : forbidden) {
      bool superset = true;
      for (const Concept& c : set) {
        if (lemmas.count(c.lemma()) == 0) {
          superset = false;
          break;
        }
      }
      if (superset) {
        covered = true;
        break;
      }
    }
    if (covered) {
      ++outcome.removed;
    } else {
      outcome.retained.push_back(record);
    }
  }
  return outcome;
}

CorpusStats corpus_stats(const std::vector<CorpusRecord>& corpus) {
  CorpusStats stats;
  std::map<Source, std::set<std::string>> per_source;
  std::set<std::string> all;
  for (const CorpusRecord& record : corpus) {
    ++stats.per_source[record.source].records;
    std::set<std::string> lemmas = record.graph.node_lemma_set();
    per_source[record.source].insert(lemmas.begin(), lemmas.end());
    all.insert(lemmas.begin(), lemmas.end());
  }
  for (auto& [source, lemmas] : per_source) {
    stats.per_source[source].distinct_concepts = lemmas.size();
  }
  stats.total_records = corpus.size();
  stats.total_distinct_concepts = all.size();
  return stats;
}

std::string format_stats_table(const CorpusStats& stats) {
  std::ostringstream out;
  auto row = [&](const std::string& name, size_t n, size_t c) {
    out << name;
    for (size_t i = name.size(); i < 12; ++i) out << ' ';
    std::string ns = std::to_string(n);
    for (size_t i = ns.size(); i < 12; ++i) out << ' ';
    out << ns << "  " << c << '\n';
  };
  out << "Source           #SKGs  #Concepts\n";
  for (const auto& [source, s] : stats.per_source) {
    row(source_name(source), s.records, s.distinct_concepts);
  }
  row("All", stats.total_records, stats.total_distinct_concepts);
  return out.str();
}

void save_corpus(const std::vector<CorpusRecord>& corpus,
                 const std::string& path) {
  JsonlWriter writer(path);
  for (const CorpusRecord& record : corpus) {
    nlohmann::json concepts = nlohmann::json::array();
    for (const Concept& c : record.concept_set) concepts.push_back(c.lemma());
    writer.write({{"id", record.id},
                  {"source", source_name(record.source)},
                  {"context", record.context},
                  {"sentence", record.sentence},
                  {"penman", penman::encode(record.graph)},
                  {"concepts", concepts}});
  }
  writer.close();
}

std::vector<CorpusRecord> load_corpus(const std::string& path) {
  std::vector<CorpusRecord> corpus;
  std::set<std::string> seen_ids;
  for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& object) {
    try {
      CorpusRecord record;
      record.id = object.at("id").get<std::string>();
      auto source = source_from_name(object.at("source").get<std::string>());
      if (!source) throw FormatError("unknown source tag");
      record.source = *source;
      record.context = object.value("context", std::string());
      record.sentence = object.value("sentence", std::string());
      record.graph = penman::decode(object.at("penman").get<std::string>(),
                                    penman::Mode::kStrict);
      for (const auto& word : object.value("concepts",
                                           std::vector<std::string>())) {
        record.concept_set.insert(Concept(word));
      }
      record.validate();
      if (!seen_ids.insert(record.id).second) {
        throw FormatError("duplicate record id \"" + record.id + "\"");
      }
      corpus.push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  });
  return corpus;
}

}  // namespace skg
