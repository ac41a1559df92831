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

#ifndef SKG_JSONL_H_
#define SKG_JSONL_H_

#include <functional>
#include <string>

#include <json.hpp>

namespace skg {

// Streams a newline-delimited JSON file, invoking fn(line_number, object)
// per non-empty line. Throws FormatError on unparsable lines (malformed
// file structure is fatal) and IoError when the file cannot be opened.
void for_each_jsonl(const std::string& path,
                    const std::function<void(size_t, const nlohmann::json&)>& fn);

// Writes content to path atomically: temp file in the same directory, then
// rename. Throws IoError.
void atomic_write(const std::string& path, const std::string& content);

// Collects lines (each dumped compactly, no embedded newlines) and writes
// them atomically on close().
class JsonlWriter {
 public:
  explicit JsonlWriter(std::string path) : path_(std::move(path)) {}

  void write(const nlohmann::json& object) {
    buffer_ += object.dump();
    buffer_ += '\n';
    ++count_;
  }

  size_t count() const { return count_; }

  // Flushes to disk; the file appears only when everything serialized.
  void close() {
    atomic_write(path_, buffer_);
    buffer_.clear();
  }

 private:
  std::string path_;
  std::string buffer_;
  size_t count_ = 0;
};

}  // namespace skg

#endif  // SKG_JSONL_H_
