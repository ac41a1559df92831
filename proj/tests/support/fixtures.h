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

#ifndef SKG_TESTS_SUPPORT_FIXTURES_H_
#define SKG_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "skg/corpus.h"
#include "skg/graph.h"
#include "skg/lexicon.h"
#include "skg/rng.h"

namespace skg::testing {

// Paths baked in at configure time, overridable via the environment.
std::string data_dir();
std::string mock_backend_bin();
std::string cli_bin();

// The worked five-node example: a dog chases a ball thrown by its owner.
// Edges: (chase,ARG0,dog), (chase,ARG1,ball), (throw,ARG1,ball),
// (throw,ARG0,owner).
SceneGraph chase_graph();

// (hold,ARG0,man), (hold,ARG1,bottle).
SceneGraph hold_graph();

// Seeded random non-empty weakly connected graph.
SceneGraph random_connected_graph(Rng& rng, int max_nodes, int max_edges,
                                  const std::vector<std::string>& alphabet);

// Exact isomorphism: a label-preserving node bijection carrying the edge
// set of `a` onto the edge set of `b`. Brute force; keep graphs small.
bool isomorphic(const SceneGraph& a, const SceneGraph& b);

// Deterministic synthetic corpus; record r000.. with graphs over a small
// everyday vocabulary, template sentences and phrase-pool contexts.
std::vector<CorpusRecord> fixture_corpus(size_t size, uint64_t seed = 17);

// Extractor backed by the shipped data files.
const ConceptExtractor& shared_extractor();

// Unique scratch directory under the system temp dir; removed on
// destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string path(const std::string& name) const;
  const std::string& root() const { return root_; }

 private:
  std::string root_;
};

std::string read_file(const std::string& path);

}  // namespace skg::testing

#endif  // SKG_TESTS_SUPPORT_FIXTURES_H_
