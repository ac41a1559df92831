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

#include "skg/realize.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

#include "skg/error.h"
#include "skg/penman.h"

namespace skg {

std::string assemble_input(const VerbalizationRequest& request,
                           InputSegments segments) {
  std::string out;
  if (segments.context) {
    out += request.context.empty() ? kNoContextToken : request.context;
    out += ' ';
    out += kSegmentSeparator;
    out += ' ';
  }
  if (segments.concepts) {
    for (const Concept& c : request.concepts) {
      out += c.lemma();
      out += ' ';
    }
    out += kSegmentSeparator;
    out += ' ';
  }
  out += penman::encode(request.graph);
  return out;
}

std::string third_person(const std::string& lemma) {
  static const std::map<std::string, std::string> kIrregular = {
      {"be", "is"}, {"have", "has"}, {"do", "does"}, {"go", "goes"}};
  if (auto it = kIrregular.find(lemma); it != kIrregular.end()) {
    return it->second;
  }
  size_t n = lemma.size();
  auto ends_with = [&](std::string_view suffix) {
    return n >= suffix.size() &&
           std::string_view(lemma).substr(n - suffix.size()) == suffix;
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") ||
      ends_with("sh") || ends_with("o")) {
    return lemma + "es";
  }
  auto is_vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  };
  if (n >= 2 && lemma[n - 1] == 'y' && !is_vowel(lemma[n - 2])) {
    return lemma.substr(0, n - 1) + "ies";
  }
  return lemma + "s";
}

namespace {

std::string with_article(const std::string& lemma) {
  char first = lemma.empty() ? 'x' : lemma[0];
  bool vowel = first == 'a' || first == 'e' || first == 'i' || first == 'o' ||
               first == 'u';
  return (vowel ? "an " : "a ") + lemma;
}

bool is_arg(const Relation& r) {
  if (!r.is_core()) return false;
  switch (r.core()) {
    case Relation::Core::kArg0:
    case Relation::Core::kArg1:
    case Relation::Core::kArg2:
    case Relation::Core::kArg3:
    case Relation::Core::kArg4:
      return true;
    default:
      return false;
  }
}

// Order and connective for modifier phrases.
int modifier_rank(const Relation& r) {
  if (!r.is_core()) return 7;
  switch (r.core()) {
    case Relation::Core::kLocation:
      return 0;
    case Relation::Core::kTime:
      return 1;
    case Relation::Core::kInstrument:
      return 2;
    case Relation::Core::kPurpose:
      return 3;
    case Relation::Core::kPoss:
      return 4;
    case Relation::Core::kPart:
      return 5;
    case Relation::Core::kMedium:
      return 6;
    default:
      return 7;
  }
}

const char* modifier_connective(int rank) {
  switch (rank) {
    case 0:
      return "in";
    case 1:
      return "when";
    case 2:
      return "with";
    case 3:
      return "to";
    case 5:
      return "of";
    case 6:
      return "on";
    default:
      return "with";
  }
}

struct Realizer {
  const SceneGraph& graph;
  std::vector<std::vector<size_t>> out_edges;
  std::vector<std::vector<size_t>> in_edges;
  std::vector<bool> visited;
  std::vector<bool> edge_done;

  explicit Realizer(const SceneGraph& g)
      : graph(g),
        out_edges(static_cast<size_t>(g.node_count())),
        in_edges(static_cast<size_t>(g.node_count())),
        visited(static_cast<size_t>(g.node_count()), false),
        edge_done(g.edges().size(), false) {
    for (size_t i = 0; i < g.edges().size(); ++i) {
      out_edges[static_cast<size_t>(g.edges()[i].head)].push_back(i);
      in_edges[static_cast<size_t>(g.edges()[i].tail)].push_back(i);
    }
  }

  bool is_predicate(NodeId node) const {
    for (size_t ei : out_edges[static_cast<size_t>(node)]) {
      if (is_arg(graph.edges()[ei].relation)) return true;
    }
    return false;
  }

  const std::string& lemma(NodeId node) const {
    return graph.label(node).lemma();
  }

  // A later incidence of an already-introduced node.
  std::string reference(NodeId node) const { return "the " + lemma(node); }

  std::string phrase(NodeId node) {
    return is_predicate(node) ? clause(node) : noun_phrase(node, true);
  }

  // Renders the pending out-edge modifiers of a node plus relative clauses
  // for unvisited in-edge heads, appended to `out`.
  void render_modifiers(NodeId node, std::string& out) {
    std::vector<size_t> pending;
    for (size_t ei : out_edges[static_cast<size_t>(node)]) {
      if (!edge_done[ei]) pending.push_back(ei);
    }
    std::stable_sort(pending.begin(), pending.end(), [&](size_t a, size_t b) {
      return modifier_rank(graph.edges()[a].relation) <
             modifier_rank(graph.edges()[b].relation);
    });
    for (size_t ei : pending) {
      const SceneGraph::Edge& e = graph.edges()[ei];
      edge_done[ei] = true;
      int rank = modifier_rank(e.relation);
      if (rank == 4) {  // poss: bare possessed noun, "a man's glove"
        out += "'s ";
        out += visited[static_cast<size_t>(e.tail)]
                   ? lemma(e.tail)
                   : noun_phrase(e.tail, false);
      } else {
        std::string target = visited[static_cast<size_t>(e.tail)]
                                 ? reference(e.tail)
                                 : phrase(e.tail);
        out += ' ';
        out += modifier_connective(rank);
        out += ' ';
        out += target;
      }
    }
    for (size_t ei : in_edges[static_cast<size_t>(node)]) {
      if (edge_done[ei]) continue;
      const SceneGraph::Edge& e = graph.edges()[ei];
      if (visited[static_cast<size_t>(e.head)]) continue;  // rendered later
      edge_done[ei] = true;
      out += " that ";
      out += phrase(e.head);
    }
  }

  std::string noun_phrase(NodeId node, bool article) {
    visited[static_cast<size_t>(node)] = true;
    std::string out = article ? with_article(lemma(node)) : lemma(node);
    render_modifiers(node, out);
    return out;
  }

  std::string clause(NodeId node) {
    visited[static_cast<size_t>(node)] = true;
    std::vector<NodeId> subjects;
    std::vector<NodeId> objects;
    std::vector<size_t> arg_edges;
    for (size_t ei : out_edges[static_cast<size_t>(node)]) {
      if (!edge_done[ei] && is_arg(graph.edges()[ei].relation)) {
        arg_edges.push_back(ei);
      }
    }
    std::stable_sort(arg_edges.begin(), arg_edges.end(),
                     [&](size_t a, size_t b) {
                       return graph.edges()[a].relation.text() <
                              graph.edges()[b].relation.text();
                     });
    for (size_t ei : arg_edges) {
      edge_done[ei] = true;
      const SceneGraph::Edge& e = graph.edges()[ei];
      if (e.relation == Relation(Relation::Core::kArg0)) {
        subjects.push_back(e.tail);
      } else {
        objects.push_back(e.tail);
      }
    }
    // Unaccusative shape: no agent argument, promote the first object so
    // (stand, ARG1, man) reads "a man stands".
    if (subjects.empty() && !objects.empty()) {
      subjects.push_back(objects.front());
      objects.erase(objects.begin());
    }

    std::string out;
    auto render_np = [&](NodeId id) {
      return visited[static_cast<size_t>(id)] ? reference(id) : phrase(id);
    };
    for (size_t i = 0; i < subjects.size(); ++i) {
      if (i > 0) out += " and ";
      out += render_np(subjects[i]);
    }
    if (!out.empty()) out += ' ';
    out += third_person(lemma(node));
    for (size_t i = 0; i < objects.size(); ++i) {
      out += i == 0 ? " " : " and ";
      out += render_np(objects[i]);
    }
    render_modifiers(node, out);
    return out;
  }
};

}  // namespace

std::string template_realize(const SceneGraph& graph) {
  if (graph.empty()) {
    throw GraphError(GraphFault::kEmptyGraph, "cannot realize an empty graph");
  }
  if (!graph.is_weakly_connected()) {
    throw GraphError(GraphFault::kDisconnected,
                     "cannot realize a disconnected graph");
  }
  Realizer realizer(graph);
  std::string sentence = realizer.phrase(penman::canonical_root(graph));
  sentence[0] = static_cast<char>(
      std::toupper(static_cast<unsigned char>(sentence[0])));
  sentence += '.';
  return sentence;
}

}  // namespace skg
