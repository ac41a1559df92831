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

#include "skg/evaluate.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "skg/error.h"
#include "skg/jsonl.h"
#include "skg/penman.h"
#include "skg/text.h"

namespace skg {

namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
    std::vector<std::string> gram(tokens.begin() + static_cast<long>(i),
                                  tokens.begin() + static_cast<long>(i) + n);
    ++counts[gram];
  }
  return counts;
}

}  // namespace

double bleu_n(const std::vector<std::string>& candidates,
              const std::vector<std::vector<std::string>>& reference_sets,
              int n) {
  if (candidates.empty()) {
    throw ValidationError("BLEU needs at least one candidate");
  }
  if (candidates.size() != reference_sets.size()) {
    throw ValidationError("BLEU needs one reference set per candidate");
  }
  if (n < 1) throw ValidationError("BLEU order must be >= 1");

  std::vector<long> matched(static_cast<size_t>(n), 0);
  std::vector<long> total(static_cast<size_t>(n), 0);
  long candidate_length = 0;
  long reference_length = 0;

  for (size_t i = 0; i < candidates.size(); ++i) {
    std::vector<std::string> cand = tokenize(candidates[i]);
    candidate_length += static_cast<long>(cand.size());

    if (reference_sets[i].empty()) {
      throw ValidationError("candidate " + std::to_string(i) +
                            " has no references");
    }
    std::vector<std::vector<std::string>> refs;
    refs.reserve(reference_sets[i].size());
    for (const std::string& r : reference_sets[i]) refs.push_back(tokenize(r));

    // Effective reference length: closest to the candidate, shorter on ties.
    long best_ref = static_cast<long>(refs[0].size());
    for (const auto& ref : refs) {
      long len = static_cast<long>(ref.size());
      long cur = std::labs(len - static_cast<long>(cand.size()));
      long best = std::labs(best_ref - static_cast<long>(cand.size()));
      if (cur < best || (cur == best && len < best_ref)) best_ref = len;
    }
    reference_length += best_ref;

    for (int k = 1; k <= n; ++k) {
      NgramCounts cand_counts = count_ngrams(cand, k);
      NgramCounts max_ref_counts;
      for (const auto& ref : refs) {
        for (const auto& [gram, count] : count_ngrams(ref, k)) {
          int& slot = max_ref_counts[gram];
          slot = std::max(slot, count);
        }
      }
      for (const auto& [gram, count] : cand_counts) {
        total[static_cast<size_t>(k - 1)] += count;
        auto it = max_ref_counts.find(gram);
        if (it != max_ref_counts.end()) {
          matched[static_cast<size_t>(k - 1)] += std::min(count, it->second);
        }
      }
    }
  }

  double log_precision = 0.0;
  for (int k = 0; k < n; ++k) {
    double m = static_cast<double>(matched[static_cast<size_t>(k)]);
    double t = static_cast<double>(total[static_cast<size_t>(k)]);
    double p = t > 0.0 ? (m > 0.0 ? m / t : kBleuEpsilon / t) : kBleuEpsilon;
    log_precision += std::log(p);
  }
  double brevity = 1.0;
  if (candidate_length == 0) return 0.0;
  if (candidate_length < reference_length) {
    brevity = std::exp(1.0 - static_cast<double>(reference_length) /
                                 static_cast<double>(candidate_length));
  }
  return brevity * std::exp(log_precision / n);
}

double explicit_concept_recall(const SceneGraph& generated,
                               const std::set<Concept>& given) {
  if (given.empty()) {
    throw ValidationError("explicit recall needs a non-empty concept set");
  }
  std::set<std::string> lemmas = generated.node_lemma_set();
  size_t hit = 0;
  for (const Concept& c : given) {
    if (lemmas.count(c.lemma()) > 0) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(given.size());
}

std::optional<double> implicit_concept_recall(const SceneGraph& generated,
                                              const SceneGraph& silver,
                                              const std::set<Concept>& given) {
  std::set<std::string> reference = silver.node_lemma_set();
  for (const Concept& c : given) reference.erase(c.lemma());
  if (reference.empty()) return std::nullopt;
  std::set<std::string> lemmas = generated.node_lemma_set();
  size_t hit = 0;
  for (const std::string& lemma : reference) {
    if (lemmas.count(lemma) > 0) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(reference.size());
}

double relation_recall(const SceneGraph& generated, const SceneGraph& silver) {
  std::set<LemmaTriple> reference = silver.lemma_triples();
  if (reference.empty()) {
    throw ValidationError("relation recall needs a silver graph with edges");
  }
  std::set<LemmaTriple> produced = generated.lemma_triples();
  size_t hit = 0;
  for (const LemmaTriple& triple : reference) {
    if (produced.count(triple) > 0) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(reference.size());
}

EvalReport evaluate_instances(const std::vector<EvalInstance>& instances,
                              int max_bleu_order) {
  EvalReport report;
  double explicit_sum = 0.0;
  double implicit_sum = 0.0;
  double relation_sum = 0.0;

  std::vector<std::string> candidates;
  std::vector<std::vector<std::string>> references;
  for (const EvalInstance& ins : instances) {
    InstanceScores scores;
    scores.id = ins.id;
    scores.step = ins.step;
    scores.explicit_recall = explicit_concept_recall(ins.generated, ins.given);
    explicit_sum += scores.explicit_recall;
    ++report.explicit_recall.count;

    scores.implicit_recall =
        implicit_concept_recall(ins.generated, ins.silver, ins.given);
    if (scores.implicit_recall.has_value()) {
      implicit_sum += *scores.implicit_recall;
      ++report.implicit_recall.count;
    }
    if (!ins.silver.lemma_triples().empty()) {
      scores.relation_recall = relation_recall(ins.generated, ins.silver);
      relation_sum += *scores.relation_recall;
      ++report.relation_recall.count;
    }
    report.instances.push_back(std::move(scores));

    candidates.push_back(ins.candidate_sentence);
    references.push_back(ins.reference_sentences);
  }

  if (report.explicit_recall.count > 0) {
    report.explicit_recall.mean =
        explicit_sum / static_cast<double>(report.explicit_recall.count);
  }
  if (report.implicit_recall.count > 0) {
    report.implicit_recall.mean =
        implicit_sum / static_cast<double>(report.implicit_recall.count);
  }
  if (report.relation_recall.count > 0) {
    report.relation_recall.mean =
        relation_sum / static_cast<double>(report.relation_recall.count);
  }
  if (!candidates.empty()) {
    for (int n = 1; n <= max_bleu_order; ++n) {
      report.bleu[n] = bleu_n(candidates, references, n);
    }
  }
  return report;
}

EvalReport evaluate_run(const std::string& results_path,
                        const std::string& references_path) {
  std::vector<TaskItem> items = load_task_file(references_path);
  std::map<std::string, const TaskItem*> by_id;
  for (const TaskItem& item : items) by_id[item.id] = &item;

  struct ResultRow {
    std::string id;
    std::vector<std::string> sentences;
    std::vector<std::string> graphs;
  };
  std::vector<ResultRow> rows;
  for_each_jsonl(results_path, [&](size_t lineno,
                                   const nlohmann::json& object) {
    if (object.contains("error")) {
      throw FormatError(results_path + ":" + std::to_string(lineno) +
                        ": result row carries an error; evaluate a clean run");
    }
    try {
      ResultRow row;
      row.id = object.at("id").get<std::string>();
      row.sentences = object.at("sentences").get<std::vector<std::string>>();
      row.graphs = object.at("penman_skgs").get<std::vector<std::string>>();
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(results_path + ":" + std::to_string(lineno) + ": " +
                        e.what());
    }
  });

  std::string missing;
  std::set<std::string> seen;
  for (const ResultRow& row : rows) {
    seen.insert(row.id);
    if (by_id.find(row.id) == by_id.end()) {
      missing += " " + row.id;
    }
  }
  for (const TaskItem& item : items) {
    if (seen.count(item.id) == 0) missing += " " + item.id;
  }
  if (!missing.empty()) {
    throw FormatError("result/reference ids do not align; unmatched:" +
                      missing);
  }

  std::vector<EvalInstance> instances;
  for (const ResultRow& row : rows) {
    const TaskItem& item = *by_id.at(row.id);
    if (row.sentences.size() != item.concept_sets.size() ||
        row.graphs.size() != item.concept_sets.size() ||
        item.sentences.size() != item.concept_sets.size() ||
        item.penman_graphs.size() != item.concept_sets.size()) {
      throw FormatError("story " + row.id +
                        ": step counts disagree between results and "
                        "references");
    }
    for (size_t step = 0; step < row.sentences.size(); ++step) {
      EvalInstance ins;
      ins.id = row.id;
      ins.step = step;
      ins.candidate_sentence = row.sentences[step];
      ins.reference_sentences = {item.sentences[step]};
      ins.generated = penman::decode(row.graphs[step], penman::Mode::kLenient);
      ins.silver =
          penman::decode(item.penman_graphs[step], penman::Mode::kStrict);
      ins.given = item.concept_sets[step];
      instances.push_back(std::move(ins));
    }
  }
  return evaluate_instances(instances);
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json bleu = nlohmann::json::object();
  for (const auto& [n, score] : report.bleu) {
    bleu["bleu-" + std::to_string(n)] = score;
  }
  auto avg = [](const MetricAverage& m) {
    return nlohmann::json{{"mean", m.mean}, {"count", m.count}};
  };
  nlohmann::json instances = nlohmann::json::array();
  for (const InstanceScores& s : report.instances) {
    nlohmann::json row = {{"id", s.id},
                          {"step", s.step},
                          {"explicit_recall", s.explicit_recall}};
    if (s.implicit_recall.has_value()) {
      row["implicit_recall"] = *s.implicit_recall;
    }
    if (s.relation_recall.has_value()) {
      row["relation_recall"] = *s.relation_recall;
    }
    instances.push_back(std::move(row));
  }
  nlohmann::json out = {{"bleu", bleu},
                        {"explicit_recall", avg(report.explicit_recall)},
                        {"implicit_recall", avg(report.implicit_recall)},
                        {"relation_recall", avg(report.relation_recall)},
                        {"instances", instances}};
  return out.dump(2);
}

std::string format_report_table(const EvalReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  auto row = [&](const std::string& name, double score, size_t count) {
    out << name;
    for (size_t i = name.size(); i < 20; ++i) out << ' ';
    out << score << "  " << count << '\n';
  };
  out << "Metric              Score   Count\n";
  for (const auto& [n, score] : report.bleu) {
    row("BLEU-" + std::to_string(n), score, report.instances.size());
  }
  row("Explicit concepts", report.explicit_recall.mean,
      report.explicit_recall.count);
  row("Implicit concepts", report.implicit_recall.mean,
      report.implicit_recall.count);
  row("Relations", report.relation_recall.mean, report.relation_recall.count);
  return out.str();
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "id,step,explicit_recall,implicit_recall,relation_recall\n";
  for (const InstanceScores& s : report.instances) {
    out << s.id << ',' << s.step << ',' << s.explicit_recall << ',';
    if (s.implicit_recall.has_value()) out << *s.implicit_recall;
    out << ',';
    if (s.relation_recall.has_value()) out << *s.relation_recall;
    out << '\n';
  }
  return out.str();
}

}  // namespace skg
