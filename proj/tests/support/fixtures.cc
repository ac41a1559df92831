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

#include "support/fixtures.h"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "skg/realize.h"

namespace skg::testing {

namespace {

std::string env_or(const char* name, const char* fallback) {
  const char* value = std::getenv(name);
  return value != nullptr && *value != '\0' ? value : fallback;
}

}  // namespace

std::string data_dir() { return env_or("SKG_DATA_DIR", SKG_TEST_DATA_DIR); }

std::string mock_backend_bin() {
  return env_or("SKG_MOCK_BACKEND", SKG_TEST_MOCK_BACKEND);
}

std::string cli_bin() { return env_or("SKG_CLI_BIN", SKG_TEST_CLI_BIN); }

SceneGraph chase_graph() {
  SceneGraph g;
  NodeId chase = g.add_node(Concept("chase"));
  NodeId dog = g.add_node(Concept("dog"));
  NodeId ball = g.add_node(Concept("ball"));
  NodeId throw_node = g.add_node(Concept("throw"));
  NodeId owner = g.add_node(Concept("owner"));
  g.add_edge(chase, Relation::Core::kArg0, dog);
  g.add_edge(chase, Relation::Core::kArg1, ball);
  g.add_edge(throw_node, Relation::Core::kArg1, ball);
  g.add_edge(throw_node, Relation::Core::kArg0, owner);
  return g;
}

SceneGraph hold_graph() {
  SceneGraph g;
  NodeId hold = g.add_node(Concept("hold"));
  NodeId man = g.add_node(Concept("man"));
  NodeId bottle = g.add_node(Concept("bottle"));
  g.add_edge(hold, Relation::Core::kArg0, man);
  g.add_edge(hold, Relation::Core::kArg1, bottle);
  return g;
}

SceneGraph random_connected_graph(Rng& rng, int max_nodes, int max_edges,
                                  const std::vector<std::string>& alphabet) {
  static const std::vector<Relation> kRelations = {
      Relation::Core::kArg0,     Relation::Core::kArg1,
      Relation::Core::kArg2,     Relation::Core::kLocation,
      Relation::Core::kTime,     Relation::Core::kPart,
      Relation::Core::kPoss,     Relation::Core::kMod,
      Relation::Core::kPurpose,  Relation::Core::kInstrument,
      Relation::parse("custom"), Relation::parse("beneficiary")};

  int n = 1 + static_cast<int>(rng.below(static_cast<size_t>(max_nodes)));
  SceneGraph g;
  for (int i = 0; i < n; ++i) {
    g.add_node(Concept(alphabet[rng.below(alphabet.size())]));
  }
  // A random spanning structure keeps the graph weakly connected.
  for (NodeId i = 1; i < n; ++i) {
    NodeId j = static_cast<NodeId>(rng.below(static_cast<size_t>(i)));
    const Relation& rel = kRelations[rng.below(kRelations.size())];
    if (rng.below(2) == 0) {
      g.add_edge(i, rel, j);
    } else {
      g.add_edge(j, rel, i);
    }
  }
  if (n > 1 && g.edge_count() < max_edges) {
    int extra = static_cast<int>(
        rng.below(static_cast<size_t>(max_edges - g.edge_count() + 1)));
    for (int k = 0; k < extra; ++k) {
      NodeId a = static_cast<NodeId>(rng.below(static_cast<size_t>(n)));
      NodeId b = static_cast<NodeId>(rng.below(static_cast<size_t>(n)));
      const Relation& rel = kRelations[rng.below(kRelations.size())];
      if (a == b || g.has_edge(a, rel, b)) continue;
      g.add_edge(a, rel, b);
    }
  }
  return g;
}

bool isomorphic(const SceneGraph& a, const SceneGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  int n = a.node_count();
  std::vector<NodeId> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (NodeId i = 0; i < n && ok; ++i) {
      ok = a.label(i) == b.label(perm[static_cast<size_t>(i)]);
    }
    for (size_t e = 0; e < a.edges().size() && ok; ++e) {
      const SceneGraph::Edge& edge = a.edges()[e];
      ok = b.has_edge(perm[static_cast<size_t>(edge.head)], edge.relation,
                      perm[static_cast<size_t>(edge.tail)]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<CorpusRecord> fixture_corpus(size_t size, uint64_t seed) {
  static const std::vector<std::string> kVerbs = {
      "throw", "catch", "chase", "hold",  "ride", "pull",  "open",
      "pour",  "carry", "kick",  "paint", "wash", "climb", "watch"};
  static const std::vector<std::string> kNouns = {
      "dog",   "cat",  "ball",  "man",   "woman", "child", "horse",
      "boat",  "rope", "cup",   "table", "tree",  "bird",  "frisbee",
      "owner", "park", "house", "door",  "hat",   "glove"};
  static const std::vector<std::string> kPhrases = {
      "the sun was warm that afternoon",
      "a small crowd gathered near the fence",
      "it had rained all morning",
      "the family arrived at the park early",
      "music played somewhere behind the trees"};

  Rng rng(seed);
  std::vector<CorpusRecord> corpus;
  corpus.reserve(size);
  for (size_t i = 0; i < size; ++i) {
    SceneGraph g;
    const std::string& verb = kVerbs[rng.below(kVerbs.size())];
    NodeId hub = g.add_node(Concept(verb));
    size_t noun_count = 2 + rng.below(3);
    std::vector<NodeId> nouns;
    std::set<std::string> used = {verb};
    for (size_t k = 0; k < noun_count; ++k) {
      const std::string& noun = kNouns[rng.below(kNouns.size())];
      if (!used.insert(noun).second) continue;
      nouns.push_back(g.add_node(Concept(noun)));
    }
    if (nouns.empty()) nouns.push_back(g.add_node(Concept("dog")));
    g.add_edge(hub, Relation::Core::kArg0, nouns[0]);
    for (size_t k = 1; k < nouns.size(); ++k) {
      const Relation rel = k == 1 ? Relation(Relation::Core::kArg1)
                                  : Relation(Relation::Core::kLocation);
      g.add_edge(hub, rel, nouns[k]);
    }

    CorpusRecord record;
    record.id = "r" + std::string(3 - std::min<size_t>(3, std::to_string(i).size()), '0') +
                std::to_string(i);
    switch (rng.below(4)) {
      case 0:
        record.source = Source::kCaption;
        break;
      case 1:
        record.source = Source::kStory;
        break;
      case 2:
        record.source = Source::kVisual;
        break;
      default:
        record.source = Source::kTask;
        break;
    }
    record.graph = g;
    if (record.source != Source::kVisual) {
      record.sentence = template_realize(g);
    }
    if (record.source == Source::kStory || record.source == Source::kTask) {
      record.context = kPhrases[rng.below(kPhrases.size())];
    }
    for (const std::string& lemma : g.node_lemma_set()) {
      record.concept_set.insert(Concept(lemma));
    }
    record.validate();
    corpus.push_back(std::move(record));
  }
  return corpus;
}

const ConceptExtractor& shared_extractor() {
  static const ConceptExtractor extractor = load_extractor(data_dir());
  return extractor;
}

TempDir::TempDir() {
  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path();
  for (int attempt = 0;; ++attempt) {
    fs::path candidate =
        base / ("skg_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(attempt));
    std::error_code ec;
    if (fs::create_directory(candidate, ec)) {
      root_ = candidate.string();
      return;
    }
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(root_, ec);
}

std::string TempDir::path(const std::string& name) const {
  return root_ + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace skg::testing
