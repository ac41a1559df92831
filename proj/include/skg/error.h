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

#ifndef SKG_ERROR_H_
#define SKG_ERROR_H_

#include <stdexcept>
#include <string>

namespace skg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A domain value violated one of its invariants (bad lemma, bad relation
// label, malformed request, ...). The message names the violated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Structural graph failures, one variant per precondition.
enum class GraphFault {
  kMissingEndpoint,
  kSelfLoop,
  kDuplicateEdge,
  kEmptyGraph,
  kDisconnected,
};

class GraphError : public Error {
 public:
  GraphError(GraphFault fault, const std::string& msg)
      : Error(msg), fault_(fault) {}
  GraphFault fault() const { return fault_; }

 private:
  GraphFault fault_;
};

// Filesystem / OS level failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// The overall structure of an input file is broken (fatal), as opposed to
// per-record problems which pipelines collect and report.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace skg

#endif  // SKG_ERROR_H_
