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

#ifndef SKG_PIPELINE_H_
#define SKG_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "skg/backend.h"
#include "skg/error.h"

namespace skg {

enum class GenerationMode {
  kIterative,    // step i sees the initial context plus sentences 1..i-1
  kIndependent,  // every step sees only the initial context
};

// One generation request: K ordered concept sets plus an optional leading
// context.
struct GenerationJob {
  std::string id;
  std::string initial_context;
  std::vector<std::set<Concept>> concept_sets;  // K >= 1, each non-empty
  GenerationMode mode = GenerationMode::kIterative;

  void validate() const;
};

struct StepDiagnostics {
  int coverage = -1;         // -1 when the backend does not report it
  bool used_fallback = false;
  std::string record_id;     // retrieval hit, if any
  double imagine_ms = 0.0;   // wall time; excluded from canonical output
  double verbalize_ms = 0.0;
};

struct GenerationResult {
  std::string id;
  std::vector<std::string> sentences;  // exactly K
  std::vector<SceneGraph> graphs;      // exactly K
  std::vector<StepDiagnostics> steps;
};

// A backend failure at step i; partial holds the completed steps.
class JobError : public Error {
 public:
  JobError(std::string message, GenerationResult partial, size_t failed_step)
      : Error(std::move(message)),
        partial_(std::move(partial)),
        failed_step_(failed_step) {}

  const GenerationResult& partial() const { return partial_; }
  size_t failed_step() const { return failed_step_; }

 private:
  GenerationResult partial_;
  size_t failed_step_;
};

// Runs one job: for each step, imagine a graph for (context, concepts),
// verbalize it, and in iterative mode append the sentence to the context
// (truncated to the most recent context_limit tokens, matching the corpus
// bound). Strictly sequential within a job.
GenerationResult run_job(const GenerationJob& job, ImagineBackend& imagine,
                         VerbalizeBackend& verbalize,
                         size_t context_limit = kContextTokenLimit);

struct BatchEntry {
  std::optional<GenerationResult> result;  // exactly one of these is set
  std::optional<std::string> error;
  GenerationResult partial;  // progress before a failure
};

// Runs independent jobs on up to `parallelism` workers; entries come back
// in job order regardless of completion order, failures isolated per job.
// With deterministic backends the output is independent of parallelism.
std::vector<BatchEntry> run_batch(const std::vector<GenerationJob>& jobs,
                                  ImagineBackend& imagine,
                                  VerbalizeBackend& verbalize,
                                  int parallelism,
                                  size_t context_limit = kContextTokenLimit);

// Job file: JSONL {id, context, concept_sets:[[...],...]}.
std::vector<GenerationJob> load_jobs(const std::string& path,
                                     GenerationMode mode);

// Result file: JSONL {id, sentences:[...], penman_skgs:[...],
// diagnostics:{coverage:[...], fallback:[...]}}. Timing lives only in
// memory unless emit_timing is set, so fixed-seed runs are byte-identical.
std::string result_to_json_line(const GenerationResult& result,
                                bool emit_timing = false);
void save_results(const std::vector<BatchEntry>& entries,
                  const std::string& path, bool emit_timing = false);

}  // namespace skg

#endif  // SKG_PIPELINE_H_
