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

#include <doctest.h>

#include <atomic>
#include <fstream>
#include <mutex>

#include "skg/error.h"
#include "skg/index.h"
#include "skg/realize.h"
#include "skg/text.h"
#include "support/fixtures.h"

using skg::BatchEntry;
using skg::Concept;
using skg::GenerationJob;
using skg::GenerationMode;
using skg::GenerationResult;
using skg::ImaginationRequest;
using skg::ImaginationResult;
using skg::JobError;
using skg::SceneGraph;
using skg::VerbalizationRequest;

namespace {

// Deterministic toy backends that also record what they saw.
class SpyImagine : public skg::ImagineBackend {
 public:
  ImaginationResult imagine(const ImaginationRequest& request) override {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      contexts.push_back(request.context);
    }
    ++calls;
    ImaginationResult result;
    skg::NodeId prev = -1;
    for (const Concept& c : request.concepts) {
      skg::NodeId node = result.graph.add_node(c);
      if (prev >= 0) {
        result.graph.add_edge(prev, skg::Relation::Core::kMod, node);
      }
      prev = node;
    }
    result.coverage = static_cast<int>(request.concepts.size());
    return result;
  }

  std::atomic<int> calls{0};
  std::mutex mutex_;
  std::vector<std::string> contexts;
};

class SpyVerbalize : public skg::VerbalizeBackend {
 public:
  explicit SpyVerbalize(bool fail_at_second = false)
      : fail_at_second_(fail_at_second) {}

  std::string verbalize(const VerbalizationRequest& request) override {
    int call = ++calls;
    if (fail_at_second_ && call == 2) {
      throw skg::ValidationError("synthetic backend failure");
    }
    std::string joined;
    for (const Concept& c : request.concepts) {
      if (!joined.empty()) joined += ' ';
      joined += c.lemma();
    }
    return "Scene " + std::to_string(request.graph.node_count()) + ": " +
           joined + ".";
  }

  std::atomic<int> calls{0};
  bool fail_at_second_;
};

GenerationJob story_job(const std::string& id, GenerationMode mode) {
  GenerationJob job;
  job.id = id;
  job.initial_context = "An afternoon at the park.";
  job.concept_sets = {{Concept("dog"), Concept("ball")},
                      {Concept("man"), Concept("throw")},
                      {Concept("dog"), Concept("catch")},
                      {Concept("owner"), Concept("smile")}};
  job.mode = mode;
  return job;
}

}  // namespace

TEST_CASE("a K=1 job with no context behaves like concept-to-sentence") {
  GenerationJob job;
  job.id = "single";
  job.concept_sets = {{Concept("dog"), Concept("frisbee")}};
  SpyImagine imagine;
  SpyVerbalize verbalize;
  GenerationResult result = skg::run_job(job, imagine, verbalize);
  CHECK(result.sentences.size() == 1);
  CHECK(result.graphs.size() == 1);
  CHECK(imagine.contexts == std::vector<std::string>{""});
}

TEST_CASE("iterative jobs make exactly K calls and accumulate context") {
  GenerationJob job = story_job("story", GenerationMode::kIterative);
  SpyImagine imagine;
  SpyVerbalize verbalize;
  GenerationResult result = skg::run_job(job, imagine, verbalize);

  CHECK(imagine.calls == 4);
  CHECK(verbalize.calls == 4);
  REQUIRE(result.sentences.size() == 4);

  // Step i sees the initial context plus sentences 1..i-1, space-joined.
  std::string expected = job.initial_context;
  REQUIRE(imagine.contexts.size() == 4);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(imagine.contexts[i] == expected);
    expected += ' ';
    expected += result.sentences[i];
  }
}

TEST_CASE("independent mode never accumulates") {
  GenerationJob job = story_job("indep", GenerationMode::kIndependent);
  SpyImagine imagine;
  SpyVerbalize verbalize;
  GenerationResult result = skg::run_job(job, imagine, verbalize);
  REQUIRE(result.sentences.size() == 4);
  for (const std::string& context : imagine.contexts) {
    CHECK(context == job.initial_context);
  }
}

TEST_CASE("both modes agree on the first step") {
  SpyImagine imagine_a, imagine_b;
  SpyVerbalize verbalize_a, verbalize_b;
  GenerationResult iterative = skg::run_job(
      story_job("a", GenerationMode::kIterative), imagine_a, verbalize_a);
  GenerationResult independent = skg::run_job(
      story_job("b", GenerationMode::kIndependent), imagine_b, verbalize_b);
  CHECK(iterative.sentences[0] == independent.sentences[0]);
  CHECK(imagine_a.contexts[0] == imagine_b.contexts[0]);
}

TEST_CASE("context accumulation respects the token bound") {
  GenerationJob job = story_job("tight", GenerationMode::kIterative);
  SpyImagine imagine;
  SpyVerbalize verbalize;
  skg::run_job(job, imagine, verbalize, /*context_limit=*/6);
  for (const std::string& context : imagine.contexts) {
    CHECK(skg::token_count(context) <= 6);
  }
}

TEST_CASE("a backend failure aborts the job with partial results") {
  GenerationJob job = story_job("fails", GenerationMode::kIterative);
  SpyImagine imagine;
  SpyVerbalize verbalize(/*fail_at_second=*/true);
  try {
    skg::run_job(job, imagine, verbalize);
    FAIL("expected JobError");
  } catch (const JobError& e) {
    CHECK(e.failed_step() == 1);
    CHECK(e.partial().sentences.size() == 1);
    CHECK(e.partial().graphs.size() == 1);
  }
}

TEST_CASE("empty jobs and empty concept sets are invalid") {
  GenerationJob job;
  job.id = "bad";
  CHECK_THROWS_AS(job.validate(), skg::ValidationError);
  job.concept_sets = {{}};
  CHECK_THROWS_AS(job.validate(), skg::ValidationError);
}

TEST_CASE("batches keep job order and isolate failures") {
  std::vector<GenerationJob> jobs = {
      story_job("one", GenerationMode::kIterative),
      story_job("two", GenerationMode::kIterative),
      story_job("three", GenerationMode::kIterative)};
  SpyImagine imagine;
  SpyVerbalize verbalize(/*fail_at_second=*/true);  // second call overall
  std::vector<BatchEntry> entries =
      skg::run_batch(jobs, imagine, verbalize, /*parallelism=*/1);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].error.has_value());  // the failure hit job one, step 2
  CHECK(entries[0].partial.id == "one");
  CHECK(entries[1].result.has_value());
  CHECK(entries[2].result.has_value());
  CHECK(entries[1].result->id == "two");
  CHECK(entries[2].result->id == "three");
}

TEST_CASE("results are independent of parallelism with pure backends") {
  std::vector<GenerationJob> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(story_job("job" + std::to_string(i),
                             GenerationMode::kIterative));
  }
  auto render = [&](int parallelism) {
    // Retrieval + template realizer: deterministic end to end.
    auto corpus = skg::testing::fixture_corpus(30);
    skg::RetrievalBackend imagine(
        skg::build_index(corpus),
        skg::Lexicon::load(skg::testing::data_dir() + "/verbs.txt"));
    skg::TemplateVerbalizeBackend verbalize;
    std::vector<BatchEntry> entries =
        skg::run_batch(jobs, imagine, verbalize, parallelism);
    std::string serialized;
    for (const BatchEntry& entry : entries) {
      REQUIRE(entry.result.has_value());
      serialized += skg::result_to_json_line(*entry.result);
      serialized += '\n';
    }
    return serialized;
  };
  CHECK(render(1) == render(8));
}

TEST_CASE("job and result files round trip") {
  skg::testing::TempDir dir;
  {
    std::ofstream out(dir.path("jobs.jsonl"));
    out << R"json({"id":"j1","context":"A quiet day.","concept_sets":[["dog","ball"],["man"]]})json"
        << "\n"
        << R"json({"id":"j2","concept_sets":[["cat"]]})json" << "\n";
  }
  std::vector<GenerationJob> jobs =
      skg::load_jobs(dir.path("jobs.jsonl"), GenerationMode::kIterative);
  REQUIRE(jobs.size() == 2);
  CHECK(jobs[0].concept_sets.size() == 2);
  CHECK(jobs[1].initial_context.empty());

  SpyImagine imagine;
  SpyVerbalize verbalize;
  std::vector<BatchEntry> entries = skg::run_batch(jobs, imagine, verbalize, 2);
  skg::save_results(entries, dir.path("results.jsonl"));

  std::string content = skg::testing::read_file(dir.path("results.jsonl"));
  CHECK(content.find("\"id\":\"j1\"") != std::string::npos);
  CHECK(content.find("penman_skgs") != std::string::npos);
  CHECK(content.find("coverage") != std::string::npos);
  // Timing is not serialized by default: reruns stay byte-identical.
  CHECK(content.find("imagine_ms") == std::string::npos);
}
