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

#include "skg/relation.h"

#include <array>
#include <cctype>

#include "skg/error.h"

namespace skg {

namespace {

struct CoreEntry {
  Relation::Core core;
  const char* text;
};

constexpr std::array<CoreEntry, 19> kCoreTable = {{
    {Relation::Core::kArg0, "ARG0"},
    {Relation::Core::kArg1, "ARG1"},
    {Relation::Core::kArg2, "ARG2"},
    {Relation::Core::kArg3, "ARG3"},
    {Relation::Core::kArg4, "ARG4"},
    {Relation::Core::kLocation, "location"},
    {Relation::Core::kTime, "time"},
    {Relation::Core::kPart, "part"},
    {Relation::Core::kPoss, "poss"},
    {Relation::Core::kDomain, "domain"},
    {Relation::Core::kPossible, "possible"},
    {Relation::Core::kOp1, "op1"},
    {Relation::Core::kOp2, "op2"},
    {Relation::Core::kOp3, "op3"},
    {Relation::Core::kMod, "mod"},
    {Relation::Core::kPurpose, "purpose"},
    {Relation::Core::kInstrument, "instrument"},
    {Relation::Core::kMedium, "medium"},
    {Relation::Core::kOther, "other"},
}};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

Relation::Relation(Core core) : core_(core) {
  for (const auto& entry : kCoreTable) {
    if (entry.core == core) {
      text_ = entry.text;
      return;
    }
  }
}

std::optional<Relation::Core> Relation::core_from_text(std::string_view text) {
  for (const auto& entry : kCoreTable) {
    if (iequals(text, entry.text)) return entry.core;
  }
  return std::nullopt;
}

Relation Relation::parse(std::string_view text) {
  if (auto core = core_from_text(text)) {
    return Relation(*core);
  }
  if (text.empty()) {
    throw ValidationError("relation label must be non-empty");
  }
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      throw ValidationError("relation label must not contain whitespace: \"" +
                            std::string(text) + "\"");
    }
    if (c >= 'A' && c <= 'Z') {
      throw ValidationError("extension relation label must be lowercase: \"" +
                            std::string(text) + "\"");
    }
    if (c == '(' || c == ')' || c == '/' || c == ':') {
      throw ValidationError(
          "relation label must not contain '(', ')', '/' or ':': \"" +
          std::string(text) + "\"");
    }
  }
  return Relation(std::nullopt, std::string(text));
}

}  // namespace skg
