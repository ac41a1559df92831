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

#ifndef SKG_EVALUATE_H_
#define SKG_EVALUATE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skg/corpus.h"
#include "skg/graph.h"

namespace skg {

// Smoothing floor substituted for zero clipped n-gram counts so corpus
// scores are reproducible bit for bit.
inline constexpr double kBleuEpsilon = 1e-9;

// Corpus-level BLEU-n: geometric mean of clipped n-gram precisions for
// k = 1..n times the brevity penalty. Tokens are whitespace-delimited.
// The effective reference length is, per candidate, the closest reference
// length (shorter wins ties). Requires equally many candidates and
// reference sets, at least one candidate, and n >= 1.
double bleu_n(const std::vector<std::string>& candidates,
              const std::vector<std::vector<std::string>>& reference_sets,
              int n);

// |given ∩ nodes(generated)| / |given|; `given` must be non-empty.
double explicit_concept_recall(const SceneGraph& generated,
                               const std::set<Concept>& given);

// Recall over the silver nodes outside `given`; nullopt when that
// reference set is empty (the instance is excluded from averages).
std::optional<double> implicit_concept_recall(const SceneGraph& generated,
                                              const SceneGraph& silver,
                                              const std::set<Concept>& given);

// |triples(generated) ∩ triples(silver)| / |triples(silver)| at the lemma
// level; the silver graph must have at least one edge.
double relation_recall(const SceneGraph& generated, const SceneGraph& silver);

struct InstanceScores {
  std::string id;
  size_t step = 0;
  double explicit_recall = 0.0;
  std::optional<double> implicit_recall;
  std::optional<double> relation_recall;  // absent for edgeless silver graphs
};

struct MetricAverage {
  double mean = 0.0;
  size_t count = 0;
};

struct EvalReport {
  std::map<int, double> bleu;  // n (1..4) -> score
  MetricAverage explicit_recall;
  MetricAverage implicit_recall;
  MetricAverage relation_recall;
  std::vector<InstanceScores> instances;
};

// One generated step paired with its references, already decoded.
struct EvalInstance {
  std::string id;
  size_t step = 0;
  std::string candidate_sentence;
  std::vector<std::string> reference_sentences;
  SceneGraph generated;
  SceneGraph silver;
  std::set<Concept> given;
};

EvalReport evaluate_instances(const std::vector<EvalInstance>& instances,
                              int max_bleu_order = 4);

// Joins a result file (JSONL from the pipeline) with a task file by id;
// ids missing on either side are fatal and listed in the error.
EvalReport evaluate_run(const std::string& results_path,
                        const std::string& references_path);

std::string report_to_json(const EvalReport& report);
std::string format_report_table(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);

}  // namespace skg

#endif  // SKG_EVALUATE_H_
