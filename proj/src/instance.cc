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

#include "skg/instance.h"

#include "skg/error.h"
#include "skg/jsonl.h"
#include "skg/penman.h"
#include "skg/realize.h"
#include "skg/rng.h"

namespace skg {

std::string instance_kind_name(InstanceKind kind) {
  return kind == InstanceKind::kImagination ? "imagination" : "verbalization";
}

std::string skg_origin_name(SkgOrigin origin) {
  switch (origin) {
    case SkgOrigin::kSilver:
      return "silver";
    case SkgOrigin::kGenerated:
      return "generated";
    case SkgOrigin::kNone:
      return "none";
  }
  return "none";
}

namespace {

InstanceKind kind_from_name(const std::string& name) {
  if (name == "imagination") return InstanceKind::kImagination;
  if (name == "verbalization") return InstanceKind::kVerbalization;
  throw FormatError("unknown instance kind: " + name);
}

SkgOrigin origin_from_name(const std::string& name) {
  if (name == "silver") return SkgOrigin::kSilver;
  if (name == "generated") return SkgOrigin::kGenerated;
  if (name == "none") return SkgOrigin::kNone;
  throw FormatError("unknown skg origin: " + name);
}

std::string context_segment(const std::string& context) {
  return context.empty() ? kNoContextToken : context;
}

}  // namespace

TrainingInstance build_imagination_instance(const CorpusRecord& record,
                                            uint64_t seed,
                                            double dropout_rate) {
  if (record.graph.empty()) {
    throw ValidationError("record " + record.id + ": graph is empty");
  }
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
    throw ValidationError("dropout rate must be in [0, 1)");
  }

  Rng rng(seed);
  const auto& nodes = record.graph.nodes();
  std::vector<size_t> survivors;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!rng.bernoulli(dropout_rate)) survivors.push_back(i);
  }
  if (survivors.empty()) {
    survivors.push_back(rng.below(nodes.size()));
  }
  rng.shuffle(survivors);

  std::string input = context_segment(record.context);
  input += ' ';
  input += kSegmentSeparator;
  for (size_t i : survivors) {
    input += ' ';
    input += nodes[i].lemma();
  }

  TrainingInstance instance;
  instance.input_text = std::move(input);
  instance.target_text = penman::encode(record.graph);
  instance.kind = InstanceKind::kImagination;
  instance.skg_origin = SkgOrigin::kSilver;
  return instance;
}

std::vector<TrainingInstance> build_verbalization_instances(
    const CorpusRecord& record, const std::optional<SceneGraph>& imagined,
    InputSegments segments) {
  if (record.sentence.empty()) {
    throw ValidationError("record " + record.id +
                          ": verbalization needs a sentence");
  }
  std::vector<TrainingInstance> out;
  TrainingInstance silver;
  silver.input_text = assemble_input(
      {record.context, record.concept_set, record.graph}, segments);
  silver.target_text = record.sentence;
  silver.kind = InstanceKind::kVerbalization;
  silver.skg_origin = SkgOrigin::kSilver;
  out.push_back(std::move(silver));

  if (imagined.has_value()) {
    TrainingInstance generated;
    generated.input_text = assemble_input(
        {record.context, record.concept_set, *imagined}, segments);
    generated.target_text = record.sentence;
    generated.kind = InstanceKind::kVerbalization;
    generated.skg_origin = SkgOrigin::kGenerated;
    out.push_back(std::move(generated));
  }
  return out;
}

std::vector<TrainingInstance> build_imagination_instances(
    const std::vector<CorpusRecord>& corpus, uint64_t global_seed,
    double dropout_rate) {
  std::vector<TrainingInstance> out;
  out.reserve(corpus.size());
  for (const CorpusRecord& record : corpus) {
    out.push_back(build_imagination_instance(
        record, derive_seed(global_seed, record.id), dropout_rate));
  }
  return out;
}

size_t export_instances(const std::vector<TrainingInstance>& instances,
                        const std::string& path) {
  JsonlWriter writer(path);
  for (const TrainingInstance& instance : instances) {
    writer.write({{"input", instance.input_text},
                  {"target", instance.target_text},
                  {"kind", instance_kind_name(instance.kind)},
                  {"skg_origin", skg_origin_name(instance.skg_origin)}});
  }
  writer.close();
  return writer.count();
}

std::vector<TrainingInstance> import_instances(const std::string& path) {
  std::vector<TrainingInstance> out;
  for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& object) {
    try {
      TrainingInstance instance;
      instance.input_text = object.at("input").get<std::string>();
      instance.target_text = object.at("target").get<std::string>();
      instance.kind = kind_from_name(object.at("kind").get<std::string>());
      instance.skg_origin =
          origin_from_name(object.at("skg_origin").get<std::string>());
      out.push_back(std::move(instance));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace skg
