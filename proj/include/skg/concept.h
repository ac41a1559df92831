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

#ifndef SKG_CONCEPT_H_
#define SKG_CONCEPT_H_

#include <compare>
#include <string>
#include <string_view>

namespace skg {

// A concept lemma: the label of a scene-graph node.
//
// Construction first strips any trailing sense suffix ("throw-01" becomes
// "throw") and then validates the invariants: non-empty, no whitespace, no
// uppercase ASCII, and none of the structural characters "()/:" that the
// PENMAN grammar reserves. Bytes outside ASCII pass through unchanged.
class Concept {
 public:
  // Strict constructor; throws ValidationError naming the violated invariant.
  explicit Concept(std::string_view text);

  // Best-effort cleanup for untrusted sources (lenient decoding, visual
  // scene-graph annotations): lowercases ASCII, maps internal whitespace and
  // structural characters to '-', trims stray '-', strips sense suffixes.
  // Throws ValidationError only when nothing usable remains.
  static Concept sanitized(std::string_view text);

  const std::string& lemma() const { return lemma_; }

  friend bool operator==(const Concept&, const Concept&) = default;
  friend auto operator<=>(const Concept&, const Concept&) = default;

 private:
  struct AlreadyValid {};
  Concept(AlreadyValid, std::string lemma) : lemma_(std::move(lemma)) {}

  std::string lemma_;
};

// Removes trailing "-<digits>" groups ("look-01" -> "look"). Repeats until
// no suffix remains so the result never carries one.
std::string strip_sense_suffix(std::string_view text);

}  // namespace skg

#endif  // SKG_CONCEPT_H_
