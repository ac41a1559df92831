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

#ifndef SKG_BACKEND_H_
#define SKG_BACKEND_H_

#include <set>
#include <string>

#include "skg/corpus.h"
#include "skg/graph.h"

namespace skg {

// Fixed separator between the segments of a sequential model input, and the
// literal token that stands in for an absent context.
inline constexpr const char* kSegmentSeparator = "<sep>";
inline constexpr const char* kNoContextToken = "none";

// Context plus concept set; what a graph generator conditions on.
struct ImaginationRequest {
  std::string context;            // possibly empty
  std::set<Concept> concepts;     // non-empty

  // Throws ValidationError (empty concept set / overlong context).
  void validate() const;
};

// The single most probable graph for a request, with retrieval diagnostics
// when the backend has them.
struct ImaginationResult {
  SceneGraph graph;
  int coverage = -1;        // requested concepts covered; -1 when unknown
  bool used_fallback = false;
  std::string record_id;    // retrieval hit, empty otherwise
};

struct VerbalizationRequest {
  std::string context;
  std::set<Concept> concepts;
  SceneGraph graph;  // non-empty

  void validate() const;
};

// A graph generator. Implementations must tolerate concurrent calls.
class ImagineBackend {
 public:
  virtual ~ImagineBackend() = default;
  virtual ImaginationResult imagine(const ImaginationRequest& request) = 0;
};

// A sentence generator. Implementations must tolerate concurrent calls.
class VerbalizeBackend {
 public:
  virtual ~VerbalizeBackend() = default;
  virtual std::string verbalize(const VerbalizationRequest& request) = 0;
};

}  // namespace skg

#endif  // SKG_BACKEND_H_
