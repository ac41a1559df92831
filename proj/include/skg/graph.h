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

#ifndef SKG_GRAPH_H_
#define SKG_GRAPH_H_

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "skg/concept.h"
#include "skg/relation.h"

namespace skg {

using NodeId = int;

// Lemma-level view of an edge: (head lemma, relation text, tail lemma).
// This is the unit the graph-recall metrics match on.
using LemmaTriple = std::tuple<std::string, std::string, std::string>;

// Multi-relational scene graph of concept-instance nodes and typed edges.
//
// Node ids are dense, 0..n-1 in insertion order, and never reused. Two
// distinct nodes may carry the same lemma (two "dog" instances). Self-loops
// and exact duplicate (head, relation, tail) triples are rejected; parallel
// edges with different relations between the same pair are allowed.
//
// Mutation either succeeds fully or leaves the graph unchanged. Graphs are
// built by mutation and then treated as immutable values; a const SceneGraph
// is safe to share across threads.
class SceneGraph {
 public:
  struct Edge {
    NodeId head;
    Relation relation;
    NodeId tail;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  SceneGraph() = default;

  // Returns the id of the inserted node.
  NodeId add_node(Concept label);

  // Throws GraphError (kMissingEndpoint, kSelfLoop or kDuplicateEdge).
  void add_edge(NodeId head, const Relation& relation, NodeId tail);

  bool has_node(NodeId id) const {
    return id >= 0 && static_cast<size_t>(id) < nodes_.size();
  }
  bool has_edge(NodeId head, const Relation& relation, NodeId tail) const;

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return nodes_.empty(); }

  const std::vector<Concept>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Concept& label(NodeId id) const;

  int out_degree(NodeId id) const;
  int in_degree(NodeId id) const;

  // Set semantics: identical lemma-level triples collapse.
  std::set<LemmaTriple> lemma_triples() const;

  // All node labels with multiplicity.
  std::multiset<std::string> node_lemmas() const;

  // Distinct node labels.
  std::set<std::string> node_lemma_set() const;

  // True iff every node is reachable from node 0 ignoring edge direction.
  // Throws GraphError(kEmptyGraph) on the empty graph.
  bool is_weakly_connected() const;

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;

 private:
  std::vector<Concept> nodes_;
  std::vector<Edge> edges_;
};

// Splits a graph into its weakly connected components (node and edge order
// preserved within each component). Mapped visual scene graphs can come out
// disconnected, and only connected graphs serialize.
std::vector<SceneGraph> weak_components(const SceneGraph& graph);

}  // namespace skg

#endif  // SKG_GRAPH_H_
