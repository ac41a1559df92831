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

#include "skg/pipeline.h"

#include <atomic>
#include <chrono>
#include <thread>

#include "skg/jsonl.h"
#include "skg/penman.h"
#include "skg/text.h"

namespace skg {

void GenerationJob::validate() const {
  if (concept_sets.empty()) {
    throw ValidationError("job " + id + ": needs at least one concept set");
  }
  for (const auto& set : concept_sets) {
    if (set.empty()) {
      throw ValidationError("job " + id + ": concept sets must be non-empty");
    }
  }
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

GenerationResult run_job(const GenerationJob& job, ImagineBackend& imagine,
                         VerbalizeBackend& verbalize, size_t context_limit) {
  job.validate();
  GenerationResult result;
  result.id = job.id;
  std::string context = truncate_context(job.initial_context, context_limit);

  for (size_t step = 0; step < job.concept_sets.size(); ++step) {
    ImaginationRequest request{context, job.concept_sets[step]};
    StepDiagnostics diag;
    try {
      auto t0 = std::chrono::steady_clock::now();
      ImaginationResult imagined = imagine.imagine(request);
      diag.imagine_ms = elapsed_ms(t0);
      diag.coverage = imagined.coverage;
      diag.used_fallback = imagined.used_fallback;
      diag.record_id = imagined.record_id;

      VerbalizationRequest vreq{context, job.concept_sets[step],
                                imagined.graph};
      t0 = std::chrono::steady_clock::now();
      std::string sentence = verbalize.verbalize(vreq);
      diag.verbalize_ms = elapsed_ms(t0);

      result.graphs.push_back(std::move(imagined.graph));
      result.sentences.push_back(std::move(sentence));
      result.steps.push_back(std::move(diag));
    } catch (const Error& e) {
      throw JobError("job " + job.id + " failed at step " +
                         std::to_string(step + 1) + ": " + e.what(),
                     std::move(result), step);
    }

    if (job.mode == GenerationMode::kIterative) {
      if (!context.empty()) context += ' ';
      context += result.sentences.back();
      context = truncate_context(context, context_limit);
    }
  }
  return result;
}

std::vector<BatchEntry> run_batch(const std::vector<GenerationJob>& jobs,
                                  ImagineBackend& imagine,
                                  VerbalizeBackend& verbalize, int parallelism,
                                  size_t context_limit) {
  if (parallelism < 1) {
    throw ValidationError("parallelism must be at least 1");
  }
  std::vector<BatchEntry> entries(jobs.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        entries[i].result =
            run_job(jobs[i], imagine, verbalize, context_limit);
      } catch (const JobError& e) {
        entries[i].error = e.what();
        entries[i].partial = e.partial();
        entries[i].partial.id = jobs[i].id;
      } catch (const Error& e) {
        entries[i].error = e.what();
        entries[i].partial.id = jobs[i].id;
      }
    }
  };
  size_t workers =
      std::min(static_cast<size_t>(parallelism), std::max<size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return entries;
}

std::vector<GenerationJob> load_jobs(const std::string& path,
                                     GenerationMode mode) {
  std::vector<GenerationJob> jobs;
  for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& object) {
    try {
      GenerationJob job;
      job.id = object.at("id").get<std::string>();
      job.initial_context = object.value("context", std::string());
      for (const auto& set_json : object.at("concept_sets")) {
        std::set<Concept> concepts;
        for (const auto& word : set_json) {
          concepts.insert(Concept(word.get<std::string>()));
        }
        job.concept_sets.push_back(std::move(concepts));
      }
      job.mode = mode;
      job.validate();
      jobs.push_back(std::move(job));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  });
  return jobs;
}

std::string result_to_json_line(const GenerationResult& result,
                                bool emit_timing) {
  nlohmann::json graphs = nlohmann::json::array();
  for (const SceneGraph& g : result.graphs) {
    graphs.push_back(penman::encode(g));
  }
  nlohmann::json coverage = nlohmann::json::array();
  nlohmann::json fallback = nlohmann::json::array();
  for (const StepDiagnostics& s : result.steps) {
    coverage.push_back(s.coverage);
    fallback.push_back(s.used_fallback);
  }
  nlohmann::json diagnostics = {{"coverage", coverage},
                                {"fallback", fallback}};
  if (emit_timing) {
    nlohmann::json imagine_ms = nlohmann::json::array();
    nlohmann::json verbalize_ms = nlohmann::json::array();
    for (const StepDiagnostics& s : result.steps) {
      imagine_ms.push_back(s.imagine_ms);
      verbalize_ms.push_back(s.verbalize_ms);
    }
    diagnostics["imagine_ms"] = imagine_ms;
    diagnostics["verbalize_ms"] = verbalize_ms;
  }
  nlohmann::json line = {{"id", result.id},
                         {"sentences", result.sentences},
                         {"penman_skgs", graphs},
                         {"diagnostics", diagnostics}};
  return line.dump();
}

void save_results(const std::vector<BatchEntry>& entries,
                  const std::string& path, bool emit_timing) {
  std::string buffer;
  for (const BatchEntry& entry : entries) {
    if (entry.result.has_value()) {
      buffer += result_to_json_line(*entry.result, emit_timing);
    } else {
      nlohmann::json line = {{"id", entry.partial.id},
                             {"error", entry.error.value_or("unknown error")}};
      buffer += line.dump();
    }
    buffer += '\n';
  }
  atomic_write(path, buffer);
}

}  // namespace skg
