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

#include "skg/concept.h"

#include <cctype>

#include "skg/error.h"

namespace skg {

namespace {

bool is_ascii_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_structural(unsigned char c) {
  return c == '(' || c == ')' || c == '/' || c == ':';
}

void validate(const std::string& lemma) {
  if (lemma.empty()) {
    throw ValidationError("concept lemma must be non-empty");
  }
  for (unsigned char c : lemma) {
    if (is_ascii_space(c)) {
      throw ValidationError("concept lemma must not contain whitespace: \"" +
                            lemma + "\"");
    }
    if (is_ascii_upper(c)) {
      throw ValidationError("concept lemma must be lowercase: \"" + lemma +
                            "\"");
    }
    if (is_structural(c)) {
      throw ValidationError(
          "concept lemma must not contain '(', ')', '/' or ':': \"" + lemma +
          "\"");
    }
  }
}

}  // namespace

std::string strip_sense_suffix(std::string_view text) {
  std::string out(text);
  for (;;) {
    size_t dash = out.rfind('-');
    if (dash == std::string::npos || dash + 1 >= out.size()) break;
    bool all_digits = true;
    for (size_t i = dash + 1; i < out.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(out[i]))) {
        all_digits = false;
        break;
      }
    }
    if (!all_digits) break;
    out.erase(dash);
  }
  return out;
}

Concept::Concept(std::string_view text) {
  lemma_ = strip_sense_suffix(text);
  validate(lemma_);
}

Concept Concept::sanitized(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (unsigned char c : text) {
    if (is_ascii_space(c) || is_structural(c)) {
      cleaned.push_back('-');
    } else if (is_ascii_upper(c)) {
      cleaned.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      cleaned.push_back(static_cast<char>(c));
    }
  }
  // Trim the '-' padding introduced above before stripping sense suffixes.
  size_t begin = cleaned.find_first_not_of('-');
  size_t end = cleaned.find_last_not_of('-');
  if (begin == std::string::npos) {
    throw ValidationError("no usable lemma in \"" + std::string(text) + "\"");
  }
  std::string lemma = strip_sense_suffix(cleaned.substr(begin, end - begin + 1));
  if (lemma.empty()) {
    throw ValidationError("no usable lemma in \"" + std::string(text) + "\"");
  }
  validate(lemma);
  return Concept(AlreadyValid{}, std::move(lemma));
}

}  // namespace skg
