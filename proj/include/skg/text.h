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

#ifndef SKG_TEXT_H_
#define SKG_TEXT_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace skg {

// Whitespace tokenization; a token is any maximal non-whitespace run.
std::vector<std::string> tokenize(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

size_t token_count(std::string_view text);

// Keeps the most recent max_tokens tokens, rejoined with single spaces.
std::string truncate_context(std::string_view context, size_t max_tokens);

std::string to_lower(std::string_view text);

// Strips leading/trailing ASCII punctuation from a token.
std::string strip_punct(std::string_view token);

// Lowercased token set, for overlap scoring.
std::set<std::string> token_set_lower(std::string_view text);

}  // namespace skg

#endif  // SKG_TEXT_H_
