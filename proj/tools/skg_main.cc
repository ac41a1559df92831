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

// skg: command-line surface over the scene-graph toolkit. One subcommand
// per pipeline stage; every output file is written atomically and, with a
// fixed --seed, byte-deterministic.

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skg/corpus.h"
#include "skg/evaluate.h"
#include "skg/index.h"
#include "skg/instance.h"
#include "skg/jsonl.h"
#include "skg/penman.h"
#include "skg/pipeline.h"
#include "skg/realize.h"
#include "skg/remote.h"
#include "skg/text.h"
#include "skg/vg.h"

namespace {

// Exit codes (also shown in --help): 0 success, 1 internal error, 2 usage,
// 3 file error, 4 invalid data, 5 backend/transport error.
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;
constexpr int kExitBackend = 5;

struct GlobalOptions {
  std::string data_dir = "data";
  uint64_t seed = 0;
  int parallelism = 1;
  int timeout_ms = 30000;
  int retries = 2;
};

// Config precedence is flags > environment > config file > defaults.
// CLI11 applies config files before environment hooks, so environment
// values are injected as trailing arguments when the flag is absent; a
// real flag always wins, and an injected one still beats the config file.
std::vector<std::string> with_env_defaults(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  static const struct {
    const char* env;
    const char* flag;
  } kEnvFlags[] = {{"SKG_DATA_DIR", "--data-dir"},
                   {"SKG_SEED", "--seed"},
                   {"SKG_PARALLELISM", "--parallelism"},
                   {"SKG_TIMEOUT_MS", "--timeout-ms"},
                   {"SKG_RETRIES", "--retries"}};
  for (const auto& entry : kEnvFlags) {
    const char* value = std::getenv(entry.env);
    if (value == nullptr || *value == '\0') continue;
    bool present = false;
    for (const std::string& arg : args) {
      if (arg == entry.flag || arg.rfind(std::string(entry.flag) + "=", 0) == 0) {
        present = true;
        break;
      }
    }
    if (!present) {
      args.push_back(std::string(entry.flag) + "=" + value);
    }
  }
  return args;
}

std::unique_ptr<skg::ImagineBackend> make_imagine_backend(
    const std::string& spec, const std::string& corpus_path,
    const GlobalOptions& global) {
  if (spec == "retrieval") {
    if (corpus_path.empty()) {
      throw skg::ValidationError(
          "the retrieval backend needs --corpus <file>");
    }
    auto corpus = skg::load_corpus(corpus_path);
    return std::make_unique<skg::RetrievalBackend>(
        skg::build_index(corpus),
        skg::Lexicon::load(global.data_dir + "/verbs.txt"));
  }
  skg::RemoteOptions options{global.timeout_ms, global.retries};
  return std::make_unique<skg::RemoteImagineBackend>(spec, options);
}

std::unique_ptr<skg::VerbalizeBackend> make_verbalize_backend(
    const std::string& spec, const GlobalOptions& global) {
  if (spec == "template") {
    return std::make_unique<skg::TemplateVerbalizeBackend>();
  }
  skg::RemoteOptions options{global.timeout_ms, global.retries};
  return std::make_unique<skg::RemoteVerbalizeBackend>(spec, options);
}

std::set<skg::Concept> concepts_from_json(const nlohmann::json& array) {
  std::set<skg::Concept> out;
  for (const auto& word : array) {
    out.insert(skg::Concept(word.get<std::string>()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_ingest_amr(const GlobalOptions& global, const std::string& in,
                   const std::string& out, const std::string& source_name) {
  auto source = skg::source_from_name(source_name);
  if (!source) {
    throw skg::ValidationError("unknown --source: " + source_name);
  }
  skg::ConceptExtractor extractor = skg::load_extractor(global.data_dir);
  skg::IngestResult result =
      skg::ingest_amr(in, extractor, *source, global.parallelism);
  for (const skg::RecordIssue& issue : result.issues) {
    std::cerr << "skipped " << issue.record_id << " (line " << issue.line
              << "): " << issue.message << "\n";
  }
  skg::save_corpus(result.records, out);
  std::cerr << "ingested " << result.records.size() << " records, skipped "
            << result.issues.size() << "\n";
  return 0;
}

int cmd_map_vg(const GlobalOptions& global, const std::string& in,
               const std::string& out) {
  skg::VgMapper mapper(
      skg::Lexicon::load(global.data_dir + "/spatial_predicates.txt"),
      skg::Lexicon::load(global.data_dir + "/verbs.txt"));
  std::vector<skg::CorpusRecord> records;
  skg::for_each_jsonl(in, [&](size_t lineno, const nlohmann::json& object) {
    std::string image_id;
    try {
      image_id = object.at("image_id").is_string()
                     ? object.at("image_id").get<std::string>()
                     : object.at("image_id").dump();
      std::vector<skg::VisualTriple> triples;
      for (const auto& t : object.at("triples")) {
        bool is_verb = t.contains("is_verb")
                           ? t.at("is_verb").get<bool>()
                           : mapper.predicate_is_verb(skg::to_lower(
                                 t.at("predicate").get<std::string>()));
        triples.push_back(skg::VisualTriple::make(
            t.at("subject").get<std::string>(),
            t.at("predicate").get<std::string>(),
            t.at("object").get<std::string>(), is_verb));
      }
      skg::SceneGraph graph = mapper.map_scene_graph(triples);
      // One record per weakly connected component; only connected graphs
      // serialize.
      std::vector<skg::SceneGraph> parts = skg::weak_components(graph);
      for (size_t k = 0; k < parts.size(); ++k) {
        skg::CorpusRecord record;
        record.id = parts.size() == 1 ? image_id
                                      : image_id + "#" + std::to_string(k);
        record.source = skg::Source::kVisual;
        record.graph = parts[k];
        for (const std::string& lemma : parts[k].node_lemma_set()) {
          record.concept_set.insert(skg::Concept(lemma));
        }
        record.validate();
        records.push_back(std::move(record));
      }
    } catch (const nlohmann::json::exception& e) {
      throw skg::FormatError(in + ":" + std::to_string(lineno) + ": " +
                             e.what());
    }
  });
  skg::save_corpus(records, out);
  std::cerr << "mapped " << records.size() << " visual records\n";
  return 0;
}

int cmd_make_silver(const std::string& in, const std::string& out) {
  std::vector<skg::CorpusRecord> records =
      skg::make_silver_records(skg::load_task_file(in));
  skg::save_corpus(records, out);
  std::cerr << "wrote " << records.size() << " silver records\n";
  return 0;
}

std::vector<std::set<skg::Concept>> load_forbidden(const std::string& path) {
  std::vector<std::set<skg::Concept>> forbidden;
  skg::for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& object) {
    try {
      if (object.is_array()) {
        forbidden.push_back(concepts_from_json(object));
      } else if (object.contains("concept_sets")) {
        for (const auto& set_json : object.at("concept_sets")) {
          forbidden.push_back(concepts_from_json(set_json));
        }
      } else if (object.contains("concepts")) {
        forbidden.push_back(concepts_from_json(object.at("concepts")));
      } else {
        throw skg::FormatError(
            path + ":" + std::to_string(lineno) +
            ": expected an array, {concepts} or {concept_sets}");
      }
    } catch (const nlohmann::json::exception& e) {
      throw skg::FormatError(path + ":" + std::to_string(lineno) + ": " +
                             e.what());
    }
  });
  return forbidden;
}

int cmd_filter_overlap(const std::string& corpus_path,
                       const std::string& forbidden_path,
                       const std::string& out) {
  auto corpus = skg::load_corpus(corpus_path);
  auto forbidden = load_forbidden(forbidden_path);
  skg::FilterOutcome outcome = skg::filter_overlap(corpus, forbidden);
  skg::save_corpus(outcome.retained, out);
  std::cerr << "removed " << outcome.removed << " of " << corpus.size()
            << " records\n";
  return 0;
}

int cmd_stats(const std::string& corpus_path) {
  auto corpus = skg::load_corpus(corpus_path);
  std::cout << skg::format_stats_table(skg::corpus_stats(corpus));
  return 0;
}

int cmd_build_index(const std::string& corpus_path, const std::string& dump) {
  auto corpus = skg::load_corpus(corpus_path);
  skg::ConceptIndex index = skg::build_index(corpus);
  std::cout << "records   " << index.store.size() << "\n"
            << "postings  " << index.postings.size() << "\n";
  if (!dump.empty()) {
    skg::JsonlWriter writer(dump);
    for (const auto& [lemma, ids] : index.postings) {
      writer.write({{"lemma", lemma}, {"ids", ids}});
    }
    writer.close();
  }
  return 0;
}

skg::InputSegments parse_segments(const std::string& name) {
  if (name == "full") return {true, true};
  if (name == "skg") return {false, false};
  if (name == "concept-skg") return {false, true};
  if (name == "context-skg") return {true, false};
  throw skg::ValidationError("unknown --segments: " + name);
}

int cmd_make_instances(const GlobalOptions& global,
                       const std::string& corpus_path, const std::string& out,
                       const std::string& kind, double dropout,
                       const std::string& imagine_spec,
                       const std::string& segments_name) {
  auto corpus = skg::load_corpus(corpus_path);
  skg::InputSegments segments = parse_segments(segments_name);
  std::vector<skg::TrainingInstance> instances;
  if (kind == "imagination" || kind == "both") {
    auto built =
        skg::build_imagination_instances(corpus, global.seed, dropout);
    instances.insert(instances.end(), built.begin(), built.end());
  }
  if (kind == "verbalization" || kind == "both") {
    std::unique_ptr<skg::ImagineBackend> imagine;
    if (!imagine_spec.empty()) {
      imagine = make_imagine_backend(imagine_spec, corpus_path, global);
    }
    for (const skg::CorpusRecord& record : corpus) {
      if (record.sentence.empty()) continue;  // visual records
      std::optional<skg::SceneGraph> generated;
      if (imagine != nullptr && !record.concept_set.empty()) {
        generated =
            imagine->imagine({record.context, record.concept_set}).graph;
      }
      auto built =
          skg::build_verbalization_instances(record, generated, segments);
      instances.insert(instances.end(), built.begin(), built.end());
    }
  }
  size_t written = skg::export_instances(instances, out);
  std::cerr << "wrote " << written << " instances\n";
  return 0;
}

int cmd_imagine(const GlobalOptions& global, const std::string& requests_path,
                const std::string& out, const std::string& backend_spec,
                const std::string& corpus_path) {
  auto backend = make_imagine_backend(backend_spec, corpus_path, global);
  skg::JsonlWriter writer(out);
  skg::for_each_jsonl(
      requests_path, [&](size_t lineno, const nlohmann::json& object) {
        try {
          skg::ImaginationRequest request;
          request.context = object.value("context", std::string());
          request.concepts = concepts_from_json(object.at("concepts"));
          skg::ImaginationResult result = backend->imagine(request);
          nlohmann::json row = {
              {"id", object.value("id", std::to_string(lineno))},
              {"penman", skg::penman::encode(result.graph)}};
          if (result.coverage >= 0) {
            row["coverage"] = result.coverage;
            row["fallback"] = result.used_fallback;
          }
          writer.write(row);
        } catch (const nlohmann::json::exception& e) {
          throw skg::FormatError(requests_path + ":" +
                                 std::to_string(lineno) + ": " + e.what());
        }
      });
  writer.close();
  std::cerr << "answered " << writer.count() << " requests\n";
  return 0;
}

int cmd_verbalize(const GlobalOptions& global,
                  const std::string& requests_path, const std::string& out,
                  const std::string& backend_spec) {
  auto backend = make_verbalize_backend(backend_spec, global);
  skg::JsonlWriter writer(out);
  skg::for_each_jsonl(
      requests_path, [&](size_t lineno, const nlohmann::json& object) {
        try {
          skg::VerbalizationRequest request;
          request.context = object.value("context", std::string());
          if (object.contains("concepts")) {
            request.concepts = concepts_from_json(object.at("concepts"));
          }
          request.graph = skg::penman::decode(
              object.at("penman").get<std::string>());
          writer.write(
              {{"id", object.value("id", std::to_string(lineno))},
               {"text", backend->verbalize(request)}});
        } catch (const nlohmann::json::exception& e) {
          throw skg::FormatError(requests_path + ":" +
                                 std::to_string(lineno) + ": " + e.what());
        }
      });
  writer.close();
  std::cerr << "verbalized " << writer.count() << " requests\n";
  return 0;
}

int cmd_run_pipeline(const GlobalOptions& global, const std::string& jobs_path,
                     const std::string& out, const std::string& imagine_spec,
                     const std::string& verbalize_spec,
                     const std::string& corpus_path, const std::string& mode,
                     size_t context_limit, bool emit_timing) {
  skg::GenerationMode generation_mode = mode == "independent"
                                            ? skg::GenerationMode::kIndependent
                                            : skg::GenerationMode::kIterative;
  auto jobs = skg::load_jobs(jobs_path, generation_mode);
  auto imagine = make_imagine_backend(imagine_spec, corpus_path, global);
  auto verbalize = make_verbalize_backend(verbalize_spec, global);
  auto entries = skg::run_batch(jobs, *imagine, *verbalize,
                                global.parallelism, context_limit);
  skg::save_results(entries, out, emit_timing);
  size_t failed = 0;
  for (const skg::BatchEntry& entry : entries) {
    if (entry.error.has_value()) {
      ++failed;
      std::cerr << *entry.error << "\n";
    }
  }
  std::cerr << "completed " << entries.size() - failed << "/" << entries.size()
            << " jobs\n";
  return failed == 0 ? 0 : kExitBackend;
}

int cmd_evaluate(const std::string& results_path,
                 const std::string& references_path, const std::string& out,
                 const std::string& csv) {
  skg::EvalReport report = skg::evaluate_run(results_path, references_path);
  std::cout << skg::format_report_table(report);
  if (!out.empty()) skg::atomic_write(out, skg::report_to_json(report));
  if (!csv.empty()) skg::atomic_write(csv, skg::report_to_csv(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "skg: scene-knowledge-graph corpus, retrieval and generation toolkit\n"
      "Exit codes: 0 ok, 1 internal, 2 usage, 3 file error, 4 invalid data, "
      "5 backend error"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "Read options from an INI/TOML file");

  GlobalOptions global;
  app.add_option("--data-dir", global.data_dir,
                 "directory with lexicons and mapping tables (env "
                 "SKG_DATA_DIR)")
      ->capture_default_str();
  app.add_option("--seed", global.seed,
                 "seed for randomized subcommands (env SKG_SEED)")
      ->capture_default_str();
  app.add_option("--parallelism", global.parallelism,
                 "worker count (env SKG_PARALLELISM)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--timeout-ms", global.timeout_ms,
                 "remote backend timeout per request (env SKG_TIMEOUT_MS)")
      ->capture_default_str();
  app.add_option("--retries", global.retries,
                 "remote backend retries on transport errors (env "
                 "SKG_RETRIES)")
      ->capture_default_str();

  // ingest-amr
  std::string in_path, out_path, source_name = "caption";
  CLI::App* ingest = app.add_subcommand(
      "ingest-amr", "Ingest pre-parsed sentence/graph records");
  ingest->add_option("--in", in_path, "JSONL {id, sentence, penman, ...}")
      ->required();
  ingest->add_option("--out", out_path, "corpus JSONL to write")->required();
  ingest->add_option("--source", source_name,
                     "default source tag: caption|story|visual|task");

  // map-vg
  std::string vg_in, vg_out;
  CLI::App* mapvg = app.add_subcommand(
      "map-vg", "Map visual scene-graph triples into the corpus schema");
  mapvg->add_option("--in", vg_in, "JSONL {image_id, triples:[...]}")
      ->required();
  mapvg->add_option("--out", vg_out, "corpus JSONL to write")->required();

  // make-silver
  std::string silver_in, silver_out;
  CLI::App* silver = app.add_subcommand(
      "make-silver", "Expand a task file into per-sentence silver records");
  silver->add_option("--in", silver_in, "task JSONL")->required();
  silver->add_option("--out", silver_out, "corpus JSONL to write")->required();

  // filter-overlap
  std::string filter_corpus, filter_forbidden, filter_out;
  CLI::App* filter = app.add_subcommand(
      "filter-overlap", "Drop records covering downstream concept sets");
  filter->add_option("--corpus", filter_corpus, "corpus JSONL")->required();
  filter->add_option("--forbidden", filter_forbidden,
                     "task JSONL or JSONL of concept arrays")
      ->required();
  filter->add_option("--out", filter_out, "filtered corpus JSONL")->required();

  // stats
  std::string stats_corpus;
  CLI::App* stats =
      app.add_subcommand("stats", "Per-source corpus statistics");
  stats->add_option("--corpus", stats_corpus, "corpus JSONL")->required();

  // build-index
  std::string index_corpus, index_dump;
  CLI::App* index = app.add_subcommand(
      "build-index", "Build the in-memory concept index and report stats");
  index->add_option("--corpus", index_corpus, "corpus JSONL")->required();
  index->add_option("--dump", index_dump, "write postings JSONL here");

  // make-instances
  std::string mi_corpus, mi_out, mi_kind = "imagination", mi_imagine,
              mi_segments = "full";
  double mi_dropout = skg::kDefaultDropoutRate;
  CLI::App* instances = app.add_subcommand(
      "make-instances", "Export training instances from a corpus");
  instances->add_option("--corpus", mi_corpus, "corpus JSONL")->required();
  instances->add_option("--out", mi_out, "instance JSONL")->required();
  instances
      ->add_option("--kind", mi_kind, "imagination|verbalization|both")
      ->check(CLI::IsMember({"imagination", "verbalization", "both"}));
  instances->add_option("--dropout", mi_dropout,
                        "concept dropout rate in [0,1)");
  instances->add_option(
      "--imagine-backend", mi_imagine,
      "also emit generated-graph verbalization instances via this backend");
  instances
      ->add_option("--segments", mi_segments,
                   "verbalization input segments: full|skg|concept-skg|"
                   "context-skg")
      ->check(CLI::IsMember({"full", "skg", "concept-skg", "context-skg"}));

  // imagine
  std::string im_requests, im_out, im_backend = "retrieval", im_corpus;
  CLI::App* imagine = app.add_subcommand(
      "imagine", "Produce a graph per (context, concepts) request");
  imagine->add_option("--requests", im_requests, "JSONL {id?, context?, concepts}")
      ->required();
  imagine->add_option("--out", im_out, "JSONL {id, penman}")->required();
  imagine->add_option("--backend", im_backend,
                      "retrieval | tcp:host:port | exec:cmd...");
  imagine->add_option("--corpus", im_corpus,
                      "corpus JSONL (retrieval backend)");

  // verbalize
  std::string vb_requests, vb_out, vb_backend = "template";
  CLI::App* verbalize = app.add_subcommand(
      "verbalize", "Produce a sentence per (context, concepts, graph)");
  verbalize
      ->add_option("--requests", vb_requests,
                   "JSONL {id?, context?, concepts?, penman}")
      ->required();
  verbalize->add_option("--out", vb_out, "JSONL {id, text}")->required();
  verbalize->add_option("--backend", vb_backend,
                        "template | tcp:host:port | exec:cmd...");

  // run-pipeline
  std::string rp_jobs, rp_out, rp_imagine = "retrieval",
              rp_verbalize = "template", rp_corpus, rp_mode = "iterative";
  size_t rp_context_limit = skg::kContextTokenLimit;
  bool rp_timing = false;
  CLI::App* pipeline = app.add_subcommand(
      "run-pipeline", "Iterative imagine-then-verbalize over a job file");
  pipeline->add_option("--jobs", rp_jobs, "JSONL {id, context, concept_sets}")
      ->required();
  pipeline->add_option("--out", rp_out, "result JSONL")->required();
  pipeline->add_option("--imagine-backend", rp_imagine,
                       "retrieval | tcp:host:port | exec:cmd...");
  pipeline->add_option("--verbalize-backend", rp_verbalize,
                       "template | tcp:host:port | exec:cmd...");
  pipeline->add_option("--corpus", rp_corpus,
                       "corpus JSONL (retrieval backend)");
  pipeline->add_option("--mode", rp_mode, "iterative|independent")
      ->check(CLI::IsMember({"iterative", "independent"}));
  pipeline->add_option("--context-limit", rp_context_limit,
                       "token bound for accumulated context");
  pipeline->add_flag("--emit-timing", rp_timing,
                     "include wall-clock timings in diagnostics");

  // evaluate
  std::string ev_results, ev_references, ev_out, ev_csv;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score a result file against task references");
  evaluate->add_option("--results", ev_results, "pipeline result JSONL")
      ->required();
  evaluate->add_option("--references", ev_references, "task JSONL")
      ->required();
  evaluate->add_option("--out", ev_out, "write the JSON report here");
  evaluate->add_option("--csv", ev_csv, "write per-instance CSV here");

  try {
    std::vector<std::string> args = with_env_defaults(argc, argv);
    std::vector<const char*> argv2 = {argc > 0 ? argv[0] : "skg"};
    for (const std::string& arg : args) argv2.push_back(arg.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(ingest)) {
      return cmd_ingest_amr(global, in_path, out_path, source_name);
    }
    if (app.got_subcommand(mapvg)) return cmd_map_vg(global, vg_in, vg_out);
    if (app.got_subcommand(silver)) return cmd_make_silver(silver_in, silver_out);
    if (app.got_subcommand(filter)) {
      return cmd_filter_overlap(filter_corpus, filter_forbidden, filter_out);
    }
    if (app.got_subcommand(stats)) return cmd_stats(stats_corpus);
    if (app.got_subcommand(index)) return cmd_build_index(index_corpus, index_dump);
    if (app.got_subcommand(instances)) {
      return cmd_make_instances(global, mi_corpus, mi_out, mi_kind, mi_dropout,
                                mi_imagine, mi_segments);
    }
    if (app.got_subcommand(imagine)) {
      return cmd_imagine(global, im_requests, im_out, im_backend, im_corpus);
    }
    if (app.got_subcommand(verbalize)) {
      return cmd_verbalize(global, vb_requests, vb_out, vb_backend);
    }
    if (app.got_subcommand(pipeline)) {
      return cmd_run_pipeline(global, rp_jobs, rp_out, rp_imagine,
                              rp_verbalize, rp_corpus, rp_mode,
                              rp_context_limit, rp_timing);
    }
    if (app.got_subcommand(evaluate)) {
      return cmd_evaluate(ev_results, ev_references, ev_out, ev_csv);
    }
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const skg::IoError& e) {
    std::cerr << "file error: " << e.what() << "\n";
    return kExitIo;
  } catch (const skg::RemoteError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const skg::FormatError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitData;
  } catch (const skg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
