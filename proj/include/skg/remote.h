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

#ifndef SKG_REMOTE_H_
#define SKG_REMOTE_H_

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "skg/backend.h"
#include "skg/error.h"

namespace skg {

// Wire protocol shared by imagination and verbalization backends:
// newline-delimited JSON over a stream socket or a stdio pipe, one response
// per request, in order.
//
//   {"kind":"imagine","context":"...","concepts":["..."]}
//     -> {"penman":"..."} or {"error":"..."}
//   {"kind":"verbalize","context":"...","concepts":["..."],"penman":"..."}
//     -> {"text":"..."} or {"error":"..."}
//
// Endpoints: "tcp:host:port" (one connection per request; concurrent calls
// have independent timeouts) or "exec:command arg..." (one subprocess,
// round trips serialized; the process is restarted after a failed attempt).

enum class RemoteFault {
  kConnect,     // cannot reach / spawn the backend, or it closed the stream
  kTimeout,     // no response line within the deadline
  kBadJson,     // response line is not the expected JSON shape
  kBackend,     // backend answered {"error": ...}
  kBadPayload,  // payload present but unusable even after lenient decoding
};

class RemoteError : public Error {
 public:
  RemoteError(RemoteFault fault, const std::string& msg)
      : Error(msg), fault_(fault) {}
  RemoteFault fault() const { return fault_; }

 private:
  RemoteFault fault_;
};

struct RemoteOptions {
  int timeout_ms = 30000;
  int retries = 2;  // re-attempts on transport faults (connect/timeout) only
};

// One request/response exchange with retries. Thread-safe.
class RemoteClient {
 public:
  RemoteClient(const std::string& endpoint, RemoteOptions options = {});
  ~RemoteClient();

  RemoteClient(const RemoteClient&) = delete;
  RemoteClient& operator=(const RemoteClient&) = delete;

  // Sends one line, reads one line, parses it. Throws RemoteError.
  nlohmann::json call(const nlohmann::json& request);

  const std::string& endpoint() const { return endpoint_; }

 private:
  struct Impl;
  std::string endpoint_;
  RemoteOptions options_;
  std::unique_ptr<Impl> impl_;
};

class RemoteImagineBackend : public ImagineBackend {
 public:
  RemoteImagineBackend(const std::string& endpoint, RemoteOptions options = {});

  // Lenient-decodes the returned serialization; decode repairs are reported
  // through warnings() (cleared per call is not guaranteed; callers who care
  // should snapshot sizes).
  ImaginationResult imagine(const ImaginationRequest& request) override;

  std::vector<std::string> take_warnings();

 private:
  RemoteClient client_;
  std::mutex warnings_mutex_;
  std::vector<std::string> warnings_;
};

class RemoteVerbalizeBackend : public VerbalizeBackend {
 public:
  RemoteVerbalizeBackend(const std::string& endpoint,
                         RemoteOptions options = {});

  std::string verbalize(const VerbalizationRequest& request) override;

 private:
  RemoteClient client_;
};

}  // namespace skg

#endif  // SKG_REMOTE_H_
