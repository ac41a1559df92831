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

#include "skg/text.h"

#include <cctype>

namespace skg {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

size_t token_count(std::string_view text) { return tokenize(text).size(); }

std::string truncate_context(std::string_view context, size_t max_tokens) {
  std::vector<std::string> tokens = tokenize(context);
  if (tokens.size() > max_tokens) {
    tokens.erase(tokens.begin(),
                 tokens.begin() + static_cast<long>(tokens.size() - max_tokens));
  }
  return join_tokens(tokens);
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string strip_punct(std::string_view token) {
  size_t begin = 0;
  size_t end = token.size();
  while (begin < end &&
         std::ispunct(static_cast<unsigned char>(token[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::ispunct(static_cast<unsigned char>(token[end - 1]))) {
    --end;
  }
  return std::string(token.substr(begin, end - begin));
}

std::set<std::string> token_set_lower(std::string_view text) {
  std::set<std::string> out;
  for (const std::string& token : tokenize(text)) {
    out.insert(to_lower(token));
  }
  return out;
}

}  // namespace skg
