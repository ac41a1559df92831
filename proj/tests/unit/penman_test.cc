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

#include "skg/penman.h"

#include <doctest.h>

#include "support/fixtures.h"

using skg::Concept;
using skg::GraphError;
using skg::NodeId;
using skg::Relation;
using skg::SceneGraph;
namespace penman = skg::penman;
using penman::DecodeError;
using penman::DecodeFault;
using penman::Mode;

TEST_CASE("canonical root prefers sources with the largest fanout") {
  CHECK(penman::canonical_root(skg::testing::chase_graph()) == 0);

  SceneGraph single;
  single.add_node(Concept("dog"));
  CHECK(penman::canonical_root(single) == 0);

  // Cycle a <-> b plus one extra out-edge on a: no source exists, so the
  // maximal out-degree wins.
  SceneGraph cycle;
  NodeId a = cycle.add_node(Concept("a"));
  NodeId b = cycle.add_node(Concept("b"));
  cycle.add_edge(a, Relation::Core::kArg0, b);
  cycle.add_edge(b, Relation::Core::kArg0, a);
  cycle.add_edge(a, Relation::Core::kMod, b);
  CHECK(penman::canonical_root(cycle) == a);

  SceneGraph empty;
  CHECK_THROWS_AS(penman::canonical_root(empty), GraphError);
}

TEST_CASE("encode renders the degenerate and worked examples") {
  SceneGraph single;
  single.add_node(Concept("dog"));
  CHECK(penman::encode(single) == "(z0 / dog)");

  // Applying the deterministic traversal rules by hand to the chase
  // fixture: the second incidence of ball arrives through the inverse
  // role, and throw hangs below it.
  CHECK(penman::encode(skg::testing::chase_graph()) ==
        "(z0 / chase :ARG0 (z1 / dog) :ARG1 (z2 / ball :ARG1-of (z3 / throw "
        ":ARG0 (z4 / owner))))");
}

TEST_CASE("encode refuses empty and disconnected graphs") {
  SceneGraph empty;
  CHECK_THROWS_AS(penman::encode(empty), GraphError);

  SceneGraph split;
  split.add_node(Concept("dog"));
  split.add_node(Concept("cat"));
  CHECK_THROWS_AS(penman::encode(split), GraphError);
}

TEST_CASE("encode is a pure function") {
  SceneGraph g = skg::testing::chase_graph();
  CHECK(penman::encode(g) == penman::encode(g));
  SceneGraph copy = g;
  CHECK(penman::encode(copy) == penman::encode(g));
}

TEST_CASE("variable reuse instead of inverse roles when reachable forward") {
  // hug -> dog, hug -> cat, pet -> dog: pet is introduced via the inverse
  // role on dog, but its edge to the already-visited dog reuses z1.
  SceneGraph g;
  NodeId hug = g.add_node(Concept("hug"));
  NodeId dog = g.add_node(Concept("dog"));
  NodeId cat = g.add_node(Concept("cat"));
  g.add_edge(hug, Relation::Core::kArg0, dog);
  g.add_edge(hug, Relation::Core::kArg1, cat);
  g.add_edge(cat, Relation::Core::kMod, dog);
  CHECK(penman::encode(g) ==
        "(z0 / hug :ARG0 (z1 / dog) :ARG1 (z2 / cat :mod z1))");
}

TEST_CASE("decode handles the worked examples") {
  SceneGraph dog = penman::decode("(z0 / dog)");
  CHECK(dog.node_count() == 1);
  CHECK(dog.label(0).lemma() == "dog");

  SceneGraph hold =
      penman::decode("(z0 / hold :ARG0 (z1 / man) :ARG1 (z2 / bottle))");
  std::set<skg::LemmaTriple> expected = {{"hold", "ARG0", "man"},
                                         {"hold", "ARG1", "bottle"}};
  CHECK(hold.lemma_triples() == expected);
}

TEST_CASE("decode folds variable reuse into one node") {
  SceneGraph g = penman::decode(
      "(z0 / chase :ARG0 (z1 / dog) :ARG1 (z2 / ball) :time (z3 / throw "
      ":ARG1 z2))");
  CHECK(g.node_count() == 4);
  CHECK(g.lemma_triples().count({"throw", "ARG1", "ball"}) == 1);
}

TEST_CASE("decode normalizes inverse roles to forward edges") {
  SceneGraph g = penman::decode("(z0 / ball :ARG1-of (z1 / throw))");
  std::set<skg::LemmaTriple> expected = {{"throw", "ARG1", "ball"}};
  CHECK(g.lemma_triples() == expected);
}

TEST_CASE("decode strips sense suffixes") {
  SceneGraph g = penman::decode("(z0 / throw-01 :ARG0 (z1 / man))",
                                Mode::kStrict);
  CHECK(g.label(0).lemma() == "throw");
}

TEST_CASE("truncated input fails with the truncation offset") {
  std::string text = "(z0 / dog :ARG0 (z1";
  try {
    penman::decode(text, Mode::kStrict);
    FAIL("expected a decode error");
  } catch (const DecodeError& e) {
    CHECK(e.fault() == DecodeFault::kUnbalancedParen);
    CHECK(e.offset() == text.size());
  }
}

TEST_CASE("every decode fault is distinct and carries an offset") {
  auto fault_of = [](const std::string& text, Mode mode) {
    try {
      penman::decode(text, mode);
      return std::optional<DecodeFault>();
    } catch (const DecodeError& e) {
      return std::optional<DecodeFault>(e.fault());
    }
  };
  CHECK(fault_of("", Mode::kStrict) == DecodeFault::kEmptyInput);
  CHECK(fault_of("  \t ", Mode::kLenient) == DecodeFault::kEmptyInput);
  CHECK(fault_of("(z0 / dog", Mode::kStrict) == DecodeFault::kUnbalancedParen);
  CHECK(fault_of("(z0 dog)", Mode::kStrict) == DecodeFault::kMissingSlash);
  CHECK(fault_of("(z0 /)", Mode::kStrict) == DecodeFault::kMissingLemma);
  CHECK(fault_of("(z0 / a :mod z9)", Mode::kStrict) ==
        DecodeFault::kUnknownVariable);
  CHECK(fault_of("(z0 / a :mod (z0 / b))", Mode::kStrict) ==
        DecodeFault::kRedefinedVariable);
  CHECK(fault_of("(z0 / a :mod (z1 / b) :mod z1)", Mode::kStrict) ==
        DecodeFault::kDuplicateEdge);
  CHECK(fault_of("(z0 / a :mod z0)", Mode::kStrict) == DecodeFault::kSelfLoop);
  CHECK(fault_of("(z0 / a) trailing", Mode::kStrict) ==
        DecodeFault::kTrailingText);
  CHECK(fault_of("(z0 / Dog)", Mode::kStrict) == DecodeFault::kInvalidLabel);
  CHECK(fault_of("(z0 / a :BAD^REL (z1 / b))", Mode::kStrict) ==
        DecodeFault::kInvalidRelation);
  CHECK(fault_of("dog cat", Mode::kLenient) == DecodeFault::kBadToken);

  std::string deep;
  for (int i = 0; i < 1200; ++i) deep += "(z" + std::to_string(i) + " / a :mod ";
  CHECK(fault_of(deep, Mode::kLenient) == DecodeFault::kTooDeep);
}

TEST_CASE("lenient mode repairs generator output with warnings") {
  std::vector<std::string> warnings;

  SUBCASE("bare token materializes a fresh node") {
    SceneGraph g = penman::decode("(z0 / hold :ARG0 man)", Mode::kLenient,
                                  &warnings);
    CHECK(g.node_count() == 2);
    CHECK(g.lemma_triples().count({"hold", "ARG0", "man"}) == 1);
    CHECK_FALSE(warnings.empty());
  }

  SUBCASE("bare single concept becomes a one-node graph") {
    SceneGraph g = penman::decode("dog", Mode::kLenient, &warnings);
    CHECK(g.node_count() == 1);
    CHECK(g.label(0).lemma() == "dog");
    CHECK_FALSE(warnings.empty());
  }

  SUBCASE("labels and relations are case-folded") {
    SceneGraph g =
        penman::decode("(z0 / Dog :Weird (z1 / CAT))", Mode::kLenient,
                       &warnings);
    CHECK(g.label(0).lemma() == "dog");
    CHECK(g.label(1).lemma() == "cat");
    CHECK(g.lemma_triples().count({"dog", "weird", "cat"}) == 1);
    CHECK_FALSE(warnings.empty());
  }

  SUBCASE("duplicate edges and self-loops are skipped") {
    SceneGraph g = penman::decode("(z0 / a :mod (z1 / b) :mod z1 :mod z0)",
                                  Mode::kLenient, &warnings);
    CHECK(g.edge_count() == 1);
    CHECK(warnings.size() == 2);
  }

  SUBCASE("trailing text is ignored") {
    SceneGraph g = penman::decode("(z0 / a) whatever", Mode::kLenient,
                                  &warnings);
    CHECK(g.node_count() == 1);
    CHECK_FALSE(warnings.empty());
  }
}

TEST_CASE("round trip preserves triples and node multisets") {
  skg::Rng rng(2024);
  std::vector<std::string> alphabet = {"dog", "cat",  "ball", "man",
                                       "park", "tree", "bird", "cup"};
  for (int round = 0; round < 300; ++round) {
    SceneGraph g = skg::testing::random_connected_graph(rng, 10, 14, alphabet);
    SceneGraph back = penman::decode(penman::encode(g), Mode::kStrict);
    CHECK(back.lemma_triples() == g.lemma_triples());
    CHECK(back.node_lemmas() == g.node_lemmas());
  }
}

TEST_CASE("decode then encode is stable") {
  std::string text = penman::encode(skg::testing::chase_graph());
  SceneGraph decoded = penman::decode(text, Mode::kStrict);
  CHECK(penman::encode(decoded) == text);
}
