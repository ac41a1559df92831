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

#include "skg/graph.h"

#include <doctest.h>

#include "skg/error.h"
#include "support/fixtures.h"

using skg::Concept;
using skg::GraphError;
using skg::GraphFault;
using skg::LemmaTriple;
using skg::NodeId;
using skg::Relation;
using skg::SceneGraph;

TEST_CASE("node insertion returns dense ids and permits duplicate labels") {
  SceneGraph g;
  CHECK(g.add_node(Concept("dog")) == 0);
  CHECK(g.add_node(Concept("dog")) == 1);
  CHECK(g.node_count() == 2);
  CHECK(g.label(0).lemma() == "dog");
  CHECK(g.label(1).lemma() == "dog");
}

TEST_CASE("edge insertion validates endpoints, loops and duplicates") {
  SceneGraph g;
  NodeId t = g.add_node(Concept("throw"));
  NodeId o = g.add_node(Concept("owner"));
  g.add_edge(t, Relation::Core::kArg0, o);
  CHECK(g.edge_count() == 1);

  CHECK_THROWS_AS(g.add_edge(t, Relation::Core::kArg0, 7), GraphError);
  CHECK_THROWS_AS(g.add_edge(t, Relation::Core::kArg0, t), GraphError);
  CHECK_THROWS_AS(g.add_edge(t, Relation::Core::kArg0, o), GraphError);

  // Parallel edges with a different relation are allowed.
  g.add_edge(t, Relation::Core::kArg1, o);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("edge faults carry their variant") {
  SceneGraph g;
  NodeId a = g.add_node(Concept("a"));
  NodeId b = g.add_node(Concept("b"));
  g.add_edge(a, Relation::Core::kMod, b);
  try {
    g.add_edge(a, Relation::Core::kMod, a);
    FAIL("expected self-loop error");
  } catch (const GraphError& e) {
    CHECK(e.fault() == GraphFault::kSelfLoop);
  }
  try {
    g.add_edge(a, Relation::Core::kMod, b);
    FAIL("expected duplicate error");
  } catch (const GraphError& e) {
    CHECK(e.fault() == GraphFault::kDuplicateEdge);
  }
  try {
    g.add_edge(5, Relation::Core::kMod, b);
    FAIL("expected endpoint error");
  } catch (const GraphError& e) {
    CHECK(e.fault() == GraphFault::kMissingEndpoint);
  }
}

TEST_CASE("failed mutations leave the graph unchanged") {
  SceneGraph g = skg::testing::chase_graph();
  SceneGraph before = g;
  CHECK_THROWS(g.add_edge(0, Relation::Core::kArg0, 0));
  CHECK_THROWS(g.add_edge(0, Relation::Core::kArg0, 1));  // duplicate
  CHECK_THROWS(g.add_edge(0, Relation::Core::kArg0, 99));
  CHECK(g == before);
}

TEST_CASE("lemma triples collapse to set semantics") {
  SceneGraph empty;
  CHECK(empty.lemma_triples().empty());

  SceneGraph g = skg::testing::chase_graph();
  std::set<LemmaTriple> expected = {
      {"chase", "ARG0", "dog"},
      {"chase", "ARG1", "ball"},
      {"throw", "ARG1", "ball"},
      {"throw", "ARG0", "owner"},
  };
  CHECK(g.lemma_triples() == expected);

  // Two distinct dog instances with the same lemma-level triple.
  SceneGraph twins;
  NodeId chase = twins.add_node(Concept("chase"));
  NodeId dog1 = twins.add_node(Concept("dog"));
  NodeId dog2 = twins.add_node(Concept("dog"));
  twins.add_edge(chase, Relation::Core::kArg0, dog1);
  twins.add_edge(chase, Relation::Core::kArg0, dog2);
  CHECK(twins.lemma_triples().size() == 1);
}

TEST_CASE("node lemma multiset keeps duplicates") {
  SceneGraph empty;
  CHECK(empty.node_lemmas().empty());

  SceneGraph g;
  g.add_node(Concept("dog"));
  g.add_node(Concept("dog"));
  CHECK(g.node_lemmas().count("dog") == 2);

  std::multiset<std::string> expected = {"chase", "dog", "ball", "throw",
                                         "owner"};
  CHECK(skg::testing::chase_graph().node_lemmas() == expected);
}

TEST_CASE("weak connectivity") {
  SceneGraph single;
  single.add_node(Concept("dog"));
  CHECK(single.is_weakly_connected());

  SceneGraph two;
  two.add_node(Concept("dog"));
  two.add_node(Concept("cat"));
  CHECK_FALSE(two.is_weakly_connected());

  CHECK(skg::testing::chase_graph().is_weakly_connected());

  SceneGraph empty;
  CHECK_THROWS_AS((void)empty.is_weakly_connected(), GraphError);
}

TEST_CASE("lemma triples are invariant under node relabeling") {
  SceneGraph g = skg::testing::chase_graph();
  // Rebuild with node ids permuted (insertion order reversed).
  SceneGraph permuted;
  std::vector<NodeId> remap(static_cast<size_t>(g.node_count()));
  for (int i = g.node_count() - 1; i >= 0; --i) {
    remap[static_cast<size_t>(i)] = permuted.add_node(g.label(i));
  }
  for (const SceneGraph::Edge& e : g.edges()) {
    permuted.add_edge(remap[static_cast<size_t>(e.head)], e.relation,
                      remap[static_cast<size_t>(e.tail)]);
  }
  CHECK(permuted.lemma_triples() == g.lemma_triples());
  CHECK(permuted.node_lemmas() == g.node_lemmas());
}

TEST_CASE("edge ids always reference existing nodes after random builds") {
  skg::Rng rng(99);
  for (int round = 0; round < 50; ++round) {
    SceneGraph g = skg::testing::random_connected_graph(
        rng, 8, 12, {"a", "b", "c", "d"});
    for (const SceneGraph::Edge& e : g.edges()) {
      CHECK(g.has_node(e.head));
      CHECK(g.has_node(e.tail));
      CHECK(e.head != e.tail);
    }
    CHECK(g.is_weakly_connected());
  }
}

TEST_CASE("weak components split disconnected graphs") {
  SceneGraph g;
  NodeId a = g.add_node(Concept("man"));
  NodeId b = g.add_node(Concept("ball"));
  NodeId c = g.add_node(Concept("cup"));
  NodeId d = g.add_node(Concept("table"));
  g.add_edge(a, Relation::Core::kPoss, b);
  g.add_edge(c, Relation::Core::kLocation, d);

  std::vector<SceneGraph> parts = skg::weak_components(g);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].node_lemma_set() == std::set<std::string>{"man", "ball"});
  CHECK(parts[1].node_lemma_set() == std::set<std::string>{"cup", "table"});
  CHECK(parts[0].edge_count() == 1);
  CHECK(parts[1].edge_count() == 1);

  std::vector<SceneGraph> whole =
      skg::weak_components(skg::testing::chase_graph());
  CHECK(whole.size() == 1);
  CHECK(whole[0] == skg::testing::chase_graph());
}
