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

#include <vector>

#include "skg/error.h"

namespace skg {

NodeId SceneGraph::add_node(Concept label) {
  nodes_.push_back(std::move(label));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

bool SceneGraph::has_edge(NodeId head, const Relation& relation,
                          NodeId tail) const {
  for (const Edge& e : edges_) {
    if (e.head == head && e.tail == tail && e.relation == relation) {
      return true;
    }
  }
  return false;
}

void SceneGraph::add_edge(NodeId head, const Relation& relation, NodeId tail) {
  if (!has_node(head) || !has_node(tail)) {
    throw GraphError(GraphFault::kMissingEndpoint,
                     "edge endpoint does not exist: " + std::to_string(head) +
                         " -> " + std::to_string(tail));
  }
  if (head == tail) {
    throw GraphError(GraphFault::kSelfLoop,
                     "self-loop edges are not allowed (node " +
                         std::to_string(head) + ")");
  }
  if (has_edge(head, relation, tail)) {
    throw GraphError(GraphFault::kDuplicateEdge,
                     "duplicate edge (" + std::to_string(head) + ", " +
                         relation.text() + ", " + std::to_string(tail) + ")");
  }
  edges_.push_back(Edge{head, relation, tail});
}

const Concept& SceneGraph::label(NodeId id) const {
  if (!has_node(id)) {
    throw GraphError(GraphFault::kMissingEndpoint,
                     "no such node: " + std::to_string(id));
  }
  return nodes_[static_cast<size_t>(id)];
}

int SceneGraph::out_degree(NodeId id) const {
  int degree = 0;
  for (const Edge& e : edges_) {
    if (e.head == id) ++degree;
  }
  return degree;
}

int SceneGraph::in_degree(NodeId id) const {
  int degree = 0;
  for (const Edge& e : edges_) {
    if (e.tail == id) ++degree;
  }
  return degree;
}

std::set<LemmaTriple> SceneGraph::lemma_triples() const {
  std::set<LemmaTriple> triples;
  for (const Edge& e : edges_) {
    triples.emplace(nodes_[static_cast<size_t>(e.head)].lemma(),
                    e.relation.text(),
                    nodes_[static_cast<size_t>(e.tail)].lemma());
  }
  return triples;
}

std::multiset<std::string> SceneGraph::node_lemmas() const {
  std::multiset<std::string> lemmas;
  for (const Concept& c : nodes_) lemmas.insert(c.lemma());
  return lemmas;
}

std::set<std::string> SceneGraph::node_lemma_set() const {
  std::set<std::string> lemmas;
  for (const Concept& c : nodes_) lemmas.insert(c.lemma());
  return lemmas;
}

std::vector<SceneGraph> weak_components(const SceneGraph& graph) {
  int n = graph.node_count();
  std::vector<int> component(static_cast<size_t>(n), -1);
  int count = 0;
  for (NodeId start = 0; start < n; ++start) {
    if (component[static_cast<size_t>(start)] >= 0) continue;
    int id = count++;
    std::vector<NodeId> stack = {start};
    component[static_cast<size_t>(start)] = id;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (const SceneGraph::Edge& e : graph.edges()) {
        NodeId v = -1;
        if (e.head == u) v = e.tail;
        if (e.tail == u) v = e.head;
        if (v >= 0 && component[static_cast<size_t>(v)] < 0) {
          component[static_cast<size_t>(v)] = id;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<SceneGraph> parts(static_cast<size_t>(count));
  std::vector<NodeId> remap(static_cast<size_t>(n), -1);
  for (NodeId u = 0; u < n; ++u) {
    remap[static_cast<size_t>(u)] =
        parts[static_cast<size_t>(component[static_cast<size_t>(u)])].add_node(
            graph.label(u));
  }
  for (const SceneGraph::Edge& e : graph.edges()) {
    parts[static_cast<size_t>(component[static_cast<size_t>(e.head)])].add_edge(
        remap[static_cast<size_t>(e.head)], e.relation,
        remap[static_cast<size_t>(e.tail)]);
  }
  return parts;
}

bool SceneGraph::is_weakly_connected() const {
  if (nodes_.empty()) {
    throw GraphError(GraphFault::kEmptyGraph,
                     "connectivity is undefined for the empty graph");
  }
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<NodeId> stack = {0};
  seen[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const Edge& e : edges_) {
      NodeId v = -1;
      if (e.head == u) v = e.tail;
      if (e.tail == u) v = e.head;
      if (v >= 0 && !seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == nodes_.size();
}

}  // namespace skg
