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

#ifndef SKG_PENMAN_H_
#define SKG_PENMAN_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "skg/error.h"
#include "skg/graph.h"

namespace skg::penman {

// Grammar of the serialized text:
//
//   node := "(" var "/" lemma (":" relation (node | var))* ")"
//
// Every variable is introduced exactly once with "/ lemma"; later incidences
// of the node appear as the bare variable. Inverse roles ":R-of" flip the
// edge direction. Tokens are separated by single spaces, no newlines.

enum class Mode {
  kStrict,   // grammar violations are errors; used for silver-data ingestion
  kLenient,  // best-effort repair of generator output, with warnings
};

// One variant per way a parse can fail. Every error carries the byte offset
// of the offending token (or of end-of-input for truncation).
enum class DecodeFault {
  kEmptyInput,
  kUnbalancedParen,
  kMissingSlash,
  kMissingLemma,
  kUnknownVariable,
  kRedefinedVariable,
  kBadToken,
  kTrailingText,
  kInvalidLabel,
  kInvalidRelation,
  kSelfLoop,
  kDuplicateEdge,
  kTooDeep,
};

class DecodeError : public Error {
 public:
  DecodeError(DecodeFault fault, size_t offset, const std::string& msg)
      : Error(msg + " (byte " + std::to_string(offset) + ")"),
        fault_(fault),
        offset_(offset) {}

  DecodeFault fault() const { return fault_; }
  size_t offset() const { return offset_; }

 private:
  DecodeFault fault_;
  size_t offset_;
};

// Root used by encode: the zero-in-degree node with maximal out-degree
// (smallest id on ties); when every node has incoming edges, the node with
// maximal out-degree, same tie-break. Throws GraphError on the empty graph.
NodeId canonical_root(const SceneGraph& graph);

// Serializes a non-empty, weakly connected graph. Deterministic: the
// spanning tree is a depth-first traversal from canonical_root that takes
// out-edges in insertion order and then in-edges (rendered with ":R-of") in
// insertion order; the first visit of a node introduces "(var / lemma ...)",
// later incidences emit the bare variable. Variables are named z0, z1, ...
// in first-visit order. Throws GraphError when empty or disconnected.
std::string encode(const SceneGraph& graph);

// Parses text back into a graph. Inverse roles are normalized to forward
// edges and variable reuse folds into a single node. In lenient mode a bare
// unknown token where a node is expected materializes a fresh node, labels
// and relations are case-folded, and duplicate edges or self-loops are
// skipped; each repair appends a note to *warnings when given. In strict
// mode all of those are errors. Throws DecodeError.
SceneGraph decode(std::string_view text, Mode mode = Mode::kLenient,
                  std::vector<std::string>* warnings = nullptr);

}  // namespace skg::penman

#endif  // SKG_PENMAN_H_
