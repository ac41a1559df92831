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

#ifndef SKG_INSTANCE_H_
#define SKG_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skg/backend.h"
#include "skg/corpus.h"
#include "skg/graph.h"
#include "skg/realize.h"

namespace skg {

inline constexpr double kDefaultDropoutRate = 0.15;

enum class InstanceKind { kImagination, kVerbalization };
enum class SkgOrigin { kSilver, kGenerated, kNone };

// One (input text, target text) pair exported for external model training.
struct TrainingInstance {
  std::string input_text;
  std::string target_text;
  InstanceKind kind = InstanceKind::kImagination;
  SkgOrigin skg_origin = SkgOrigin::kNone;

  friend bool operator==(const TrainingInstance&,
                         const TrainingInstance&) = default;
};

std::string instance_kind_name(InstanceKind kind);
std::string skg_origin_name(SkgOrigin origin);

// Builds one graph-generation training pair: the input is the context (or
// "none"), a separator, and the record's node lemmas after order shuffling
// and per-node Bernoulli dropout (at least one lemma always survives; if
// every draw discards, one node is retained uniformly at random). The
// target is the serialization of the full graph, dropped concepts included.
// Deterministic for a given seed. Requires 0 <= dropout_rate < 1 and a
// non-empty graph.
TrainingInstance build_imagination_instance(const CorpusRecord& record,
                                            uint64_t seed,
                                            double dropout_rate);

// Builds the sentence-generation pair(s) for a record: always one instance
// whose input embeds the record's own (silver) graph and, when `imagined`
// is given, a second embedding the generated graph. The input is context
// (or "none"), separator, the concept set sorted lexicographically,
// separator, the serialized graph (see assemble_input; `segments` can drop
// the leading parts); the target is the record sentence.
std::vector<TrainingInstance> build_verbalization_instances(
    const CorpusRecord& record,
    const std::optional<SceneGraph>& imagined = std::nullopt,
    InputSegments segments = {});

// Convenience over a whole corpus; the per-record seed is derived from
// (global_seed, record id) so worker order cannot change outputs.
std::vector<TrainingInstance> build_imagination_instances(
    const std::vector<CorpusRecord>& corpus, uint64_t global_seed,
    double dropout_rate);

// JSONL {input, target, kind, skg_origin}; returns the line count.
size_t export_instances(const std::vector<TrainingInstance>& instances,
                        const std::string& path);
std::vector<TrainingInstance> import_instances(const std::string& path);

}  // namespace skg

#endif  // SKG_INSTANCE_H_
