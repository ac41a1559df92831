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

#ifndef SKG_RELATION_H_
#define SKG_RELATION_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace skg {

// Edge label of a scene graph. Either one of the closed core relations
// below (AMR-style argument and modifier roles) or an open extension label
// for relations outside the core set.
//
// Core labels have a fixed canonical spelling ("ARG0", "location", ...);
// parsing matches them case-insensitively. Extension labels must be
// non-empty, lowercase and whitespace-free and compare by exact text.
class Relation {
 public:
  enum class Core {
    kArg0,
    kArg1,
    kArg2,
    kArg3,
    kArg4,
    kLocation,
    kTime,
    kPart,
    kPoss,
    kDomain,
    kPossible,
    kOp1,
    kOp2,
    kOp3,
    kMod,
    kPurpose,
    kInstrument,
    kMedium,
    kOther,
  };

  Relation(Core core);  // NOLINT: implicit by design, Relation::Core::kArg0
                        // converts wherever a Relation is expected.

  // Parses either a core label (any case) or an extension label.
  // Throws ValidationError when the text is not a legal label of either kind.
  static Relation parse(std::string_view text);

  // Case-insensitive lookup in the core table only.
  static std::optional<Core> core_from_text(std::string_view text);

  bool is_core() const { return core_.has_value(); }
  Core core() const { return *core_; }
  const std::string& text() const { return text_; }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Relation& a,
                                          const Relation& b) {
    return a.text_ <=> b.text_;
  }

 private:
  Relation(std::optional<Core> core, std::string text)
      : core_(core), text_(std::move(text)) {}

  std::optional<Core> core_;
  std::string text_;
};

}  // namespace skg

#endif  // SKG_RELATION_H_
