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

#ifndef SKG_LEXICON_H_
#define SKG_LEXICON_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skg/concept.h"

namespace skg {

// A plain word list, one entry per line, UTF-8, '#' comments allowed.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::set<std::string>& words)
      : words_(words.begin(), words.end()) {}

  static Lexicon load(const std::string& path);  // throws IoError

  bool contains(std::string_view word) const {
    return words_.find(word) != words_.end();
  }
  void insert(std::string_view word) { words_.insert(std::string(word)); }
  size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

// token<TAB>lemma (or token whitespace lemma) per line.
std::map<std::string, std::string> load_exception_table(
    const std::string& path);

// Lexicon-driven noun/verb recognition with rule-based inflection stripping.
//
// Tagging is deterministic: a token found in both lexicons is read as a verb
// when the previous token is "to" or a subject pronoun, as a noun otherwise.
// Lemmatization tries the exception table first, then suffix rules
// (-ies/-es/-s for nouns; those plus -ing/-ed with e-restoration for verbs),
// keeping the first candidate present in the matching lexicon.
class ConceptExtractor {
 public:
  ConceptExtractor(Lexicon verbs, Lexicon nouns, Lexicon stopwords,
                   std::map<std::string, std::string> exceptions);

  // Content-word lemma set of a sentence. Empty set is a legal result.
  std::set<Concept> extract(std::string_view sentence) const;

  const Lexicon& verbs() const { return verbs_; }
  const Lexicon& nouns() const { return nouns_; }

 private:
  std::vector<std::string> noun_candidates(const std::string& token) const;
  std::vector<std::string> verb_candidates(const std::string& token) const;

  Lexicon verbs_;
  Lexicon nouns_;
  Lexicon stopwords_;
  std::map<std::string, std::string> exceptions_;
};

// Loads verbs.txt, nouns.txt, stopwords.txt and lemma_exceptions.txt from a
// data directory.
ConceptExtractor load_extractor(const std::string& data_dir);

}  // namespace skg

#endif  // SKG_LEXICON_H_
