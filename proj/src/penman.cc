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

#include <map>
#include <optional>

#include "skg/text.h"

namespace skg::penman {

namespace {

constexpr int kMaxDepth = 1000;

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

struct Encoder {
  const SceneGraph& graph;
  std::vector<std::vector<size_t>> out_edges;  // node -> edge indices
  std::vector<std::vector<size_t>> in_edges;
  std::vector<int> var_of;  // node -> variable number, -1 until visited
  std::vector<bool> edge_done;
  std::vector<bool> forward_reachable;  // from the root, out-edges only
  int next_var = 0;
  std::string out;

  explicit Encoder(const SceneGraph& g)
      : graph(g),
        out_edges(static_cast<size_t>(g.node_count())),
        in_edges(static_cast<size_t>(g.node_count())),
        var_of(static_cast<size_t>(g.node_count()), -1),
        edge_done(g.edges().size(), false),
        forward_reachable(static_cast<size_t>(g.node_count()), false) {
    for (size_t i = 0; i < g.edges().size(); ++i) {
      out_edges[static_cast<size_t>(g.edges()[i].head)].push_back(i);
      in_edges[static_cast<size_t>(g.edges()[i].tail)].push_back(i);
    }
  }

  // Inverse roles are reserved for nodes the root cannot reach along
  // forward edges; everything else reenters through variable reuse.
  void mark_forward_reachable(NodeId root) {
    std::vector<NodeId> stack = {root};
    forward_reachable[static_cast<size_t>(root)] = true;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (size_t ei : out_edges[static_cast<size_t>(u)]) {
        NodeId v = graph.edges()[ei].tail;
        if (!forward_reachable[static_cast<size_t>(v)]) {
          forward_reachable[static_cast<size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
  }

  std::string var_name(NodeId node) {
    return "z" + std::to_string(var_of[static_cast<size_t>(node)]);
  }

  void visit(NodeId node) {
    var_of[static_cast<size_t>(node)] = next_var++;
    out += '(';
    out += var_name(node);
    out += " / ";
    out += graph.label(node).lemma();
    for (size_t ei : out_edges[static_cast<size_t>(node)]) {
      if (edge_done[ei]) continue;
      edge_done[ei] = true;
      const SceneGraph::Edge& e = graph.edges()[ei];
      out += " :";
      out += e.relation.text();
      out += ' ';
      if (var_of[static_cast<size_t>(e.tail)] < 0) {
        visit(e.tail);
      } else {
        out += var_name(e.tail);
      }
    }
    for (size_t ei : in_edges[static_cast<size_t>(node)]) {
      if (edge_done[ei]) continue;
      const SceneGraph::Edge& e = graph.edges()[ei];
      // A visited or forward-reachable head renders this edge itself.
      if (var_of[static_cast<size_t>(e.head)] >= 0 ||
          forward_reachable[static_cast<size_t>(e.head)]) {
        continue;
      }
      edge_done[ei] = true;
      out += " :";
      out += e.relation.text();
      out += "-of ";
      visit(e.head);
    }
    out += ')';
  }
};

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

enum class TokKind { kLParen, kRParen, kSlash, kRole, kAtom, kEnd };

struct Token {
  TokKind kind;
  std::string_view text;  // without the ':' for roles
  size_t offset;
};

struct Scanner {
  std::string_view input;
  size_t pos = 0;

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == '/' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  Token next() {
    while (pos < input.size() &&
           std::isspace(static_cast<unsigned char>(input[pos]))) {
      ++pos;
    }
    if (pos >= input.size()) return {TokKind::kEnd, {}, input.size()};
    size_t start = pos;
    char c = input[pos];
    if (c == '(') {
      ++pos;
      return {TokKind::kLParen, input.substr(start, 1), start};
    }
    if (c == ')') {
      ++pos;
      return {TokKind::kRParen, input.substr(start, 1), start};
    }
    if (c == '/') {
      ++pos;
      return {TokKind::kSlash, input.substr(start, 1), start};
    }
    if (c == ':') {
      ++pos;
      size_t name_start = pos;
      while (pos < input.size() && !is_delim(input[pos]) &&
             input[pos] != ':') {
        ++pos;
      }
      return {TokKind::kRole, input.substr(name_start, pos - name_start),
              start};
    }
    while (pos < input.size() && !is_delim(input[pos]) && input[pos] != ':') {
      ++pos;
    }
    return {TokKind::kAtom, input.substr(start, pos - start), start};
  }
};

struct Parser {
  Scanner scanner;
  Mode mode;
  std::vector<std::string>* warnings;
  SceneGraph graph;
  std::map<std::string, NodeId, std::less<>> vars;
  Token look;

  Parser(std::string_view text, Mode m, std::vector<std::string>* w)
      : scanner{text}, mode(m), warnings(w) {
    look = scanner.next();
  }

  [[noreturn]] void fail(DecodeFault fault, size_t offset,
                         const std::string& msg) {
    throw DecodeError(fault, offset, msg);
  }

  void warn(const std::string& msg, size_t offset) {
    if (warnings != nullptr) {
      warnings->push_back(msg + " (byte " + std::to_string(offset) + ")");
    }
  }

  Token take() {
    Token t = look;
    look = scanner.next();
    return t;
  }

  Concept make_label(const Token& t) {
    try {
      if (mode == Mode::kStrict) return Concept(std::string(t.text));
      Concept c = Concept::sanitized(t.text);
      if (c.lemma() != t.text) {
        warn("normalized label \"" + std::string(t.text) + "\" to \"" +
                 c.lemma() + "\"",
             t.offset);
      }
      return c;
    } catch (const ValidationError& e) {
      fail(DecodeFault::kInvalidLabel, t.offset, e.what());
    }
  }

  Relation make_relation(const Token& t, bool* inverse) {
    std::string_view name = t.text;
    *inverse = false;
    if (name.size() > 3 && name.substr(name.size() - 3) == "-of") {
      *inverse = true;
      name = name.substr(0, name.size() - 3);
    }
    try {
      if (mode == Mode::kStrict) return Relation::parse(name);
      std::string folded = to_lower(name);
      if (auto core = Relation::core_from_text(folded)) {
        return Relation(*core);
      }
      Relation r = Relation::parse(folded);
      if (folded != name) {
        warn("case-folded relation \"" + std::string(name) + "\"", t.offset);
      }
      return r;
    } catch (const ValidationError& e) {
      fail(DecodeFault::kInvalidRelation, t.offset, e.what());
    }
  }

  void attach(NodeId head, const Relation& rel, NodeId tail, size_t offset) {
    if (head == tail) {
      if (mode == Mode::kStrict) {
        fail(DecodeFault::kSelfLoop, offset, "edge forms a self-loop");
      }
      warn("dropped self-loop edge", offset);
      return;
    }
    if (graph.has_edge(head, rel, tail)) {
      if (mode == Mode::kStrict) {
        fail(DecodeFault::kDuplicateEdge, offset,
             "duplicate edge :" + rel.text());
      }
      warn("dropped duplicate edge :" + rel.text(), offset);
      return;
    }
    graph.add_edge(head, rel, tail);
  }

  // Truncation in the middle of a node is reported as the unbalanced '('.
  void check_not_end(const Token& open) {
    if (look.kind == TokKind::kEnd) {
      fail(DecodeFault::kUnbalancedParen, look.offset,
           "input ends inside the node opened at byte " +
               std::to_string(open.offset));
    }
  }

  // node := "(" var "/" lemma (":" rel (node | var))* ")"
  NodeId parse_node(int depth) {
    if (depth > kMaxDepth) {
      fail(DecodeFault::kTooDeep, look.offset,
           "nesting deeper than " + std::to_string(kMaxDepth));
    }
    Token open = take();  // caller guarantees kLParen
    check_not_end(open);
    if (look.kind != TokKind::kAtom) {
      fail(DecodeFault::kBadToken, look.offset,
           "expected a variable after '('");
    }
    Token var = take();
    check_not_end(open);
    if (look.kind != TokKind::kSlash) {
      fail(DecodeFault::kMissingSlash, look.offset,
           "expected '/' after variable \"" + std::string(var.text) + "\"");
    }
    take();
    check_not_end(open);
    if (look.kind != TokKind::kAtom) {
      fail(DecodeFault::kMissingLemma, look.offset, "expected a concept lemma");
    }
    Token lemma = take();

    NodeId node;
    auto it = vars.find(var.text);
    if (it != vars.end()) {
      if (mode == Mode::kStrict) {
        fail(DecodeFault::kRedefinedVariable, var.offset,
             "variable \"" + std::string(var.text) + "\" introduced twice");
      }
      warn("variable \"" + std::string(var.text) + "\" reintroduced",
           var.offset);
      node = it->second;
    } else {
      node = graph.add_node(make_label(lemma));
      vars.emplace(std::string(var.text), node);
    }

    while (look.kind == TokKind::kRole) {
      Token role = take();
      if (role.text.empty()) {
        fail(DecodeFault::kInvalidRelation, role.offset, "empty relation name");
      }
      bool inverse = false;
      Relation rel = make_relation(role, &inverse);
      check_not_end(open);
      NodeId target;
      if (look.kind == TokKind::kLParen) {
        target = parse_node(depth + 1);
      } else if (look.kind == TokKind::kAtom) {
        Token ref = take();
        auto ref_it = vars.find(ref.text);
        if (ref_it != vars.end()) {
          target = ref_it->second;
        } else if (mode == Mode::kStrict) {
          fail(DecodeFault::kUnknownVariable, ref.offset,
               "variable \"" + std::string(ref.text) +
                   "\" referenced before introduction");
        } else {
          target = graph.add_node(make_label(ref));
          warn("materialized bare token \"" + std::string(ref.text) +
                   "\" as a node",
               ref.offset);
        }
      } else {
        fail(DecodeFault::kBadToken, look.offset,
             "expected a node or variable after :" + std::string(role.text));
      }
      if (inverse) {
        attach(target, rel, node, role.offset);
      } else {
        attach(node, rel, target, role.offset);
      }
    }

    if (look.kind != TokKind::kRParen) {
      fail(DecodeFault::kUnbalancedParen, look.offset,
           "unclosed '(' from byte " + std::to_string(open.offset));
    }
    take();
    return node;
  }

  SceneGraph run() {
    if (look.kind == TokKind::kEnd) {
      fail(DecodeFault::kEmptyInput, 0, "empty input");
    }
    if (look.kind == TokKind::kAtom && mode == Mode::kLenient) {
      // A generator may emit a single bare concept; accept it as the
      // degenerate one-node graph.
      Token atom = take();
      if (look.kind == TokKind::kEnd) {
        graph.add_node(make_label(atom));
        warn("treated bare token as a one-node graph", atom.offset);
        return std::move(graph);
      }
      fail(DecodeFault::kBadToken, atom.offset,
           "expected '(' at the start of a graph");
    }
    if (look.kind != TokKind::kLParen) {
      fail(DecodeFault::kBadToken, look.offset,
           "expected '(' at the start of a graph");
    }
    parse_node(0);
    if (look.kind != TokKind::kEnd) {
      if (mode == Mode::kStrict) {
        fail(DecodeFault::kTrailingText, look.offset,
             "unexpected text after the closing ')'");
      }
      warn("ignored trailing text", look.offset);
    }
    return std::move(graph);
  }
};

}  // namespace

NodeId canonical_root(const SceneGraph& graph) {
  if (graph.empty()) {
    throw GraphError(GraphFault::kEmptyGraph,
                     "cannot pick a root in an empty graph");
  }
  NodeId best = -1;
  bool best_is_source = false;
  int best_out = -1;
  for (NodeId id = 0; id < graph.node_count(); ++id) {
    bool is_source = graph.in_degree(id) == 0;
    int out = graph.out_degree(id);
    if (best < 0 || (is_source && !best_is_source) ||
        (is_source == best_is_source && out > best_out)) {
      best = id;
      best_is_source = is_source;
      best_out = out;
    }
  }
  return best;
}

std::string encode(const SceneGraph& graph) {
  if (graph.empty()) {
    throw GraphError(GraphFault::kEmptyGraph, "cannot encode an empty graph");
  }
  if (!graph.is_weakly_connected()) {
    throw GraphError(GraphFault::kDisconnected,
                     "cannot encode a disconnected graph; split it first");
  }
  Encoder encoder(graph);
  NodeId root = canonical_root(graph);
  encoder.mark_forward_reachable(root);
  encoder.visit(root);
  return std::move(encoder.out);
}

SceneGraph decode(std::string_view text, Mode mode,
                  std::vector<std::string>* warnings) {
  Parser parser(text, mode, warnings);
  return parser.run();
}

}  // namespace skg::penman
