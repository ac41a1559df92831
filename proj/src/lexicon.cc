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

#include "skg/lexicon.h"

#include <fstream>

#include "skg/error.h"
#include "skg/text.h"

namespace skg {

namespace {

// Subject pronouns for the verb-priority rule.
const std::set<std::string> kPronouns = {"i",  "you", "he",  "she",
                                         "it", "we",  "they", "who"};

std::string trim(const std::string& line) {
  size_t begin = line.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = line.find_last_not_of(" \t\r\n");
  return line.substr(begin, end - begin + 1);
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = trim(line);
    if (word.empty() || word[0] == '#') continue;
    lex.insert(to_lower(word));
  }
  return lex;
}

std::map<std::string, std::string> load_exception_table(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open exception table: " + path);
  std::map<std::string, std::string> table;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    std::vector<std::string> parts = tokenize(entry);
    if (parts.size() != 2) {
      throw FormatError("exception table line " + std::to_string(lineno) +
                        " is not \"token lemma\": " + path);
    }
    table[to_lower(parts[0])] = to_lower(parts[1]);
  }
  return table;
}

ConceptExtractor::ConceptExtractor(
    Lexicon verbs, Lexicon nouns, Lexicon stopwords,
    std::map<std::string, std::string> exceptions)
    : verbs_(std::move(verbs)),
      nouns_(std::move(nouns)),
      stopwords_(std::move(stopwords)),
      exceptions_(std::move(exceptions)) {}

std::vector<std::string> ConceptExtractor::noun_candidates(
    const std::string& t) const {
  std::vector<std::string> out = {t};
  size_t n = t.size();
  if (n > 3 && t.ends_with("ies")) out.push_back(t.substr(0, n - 3) + "y");
  if (n > 2 && t.ends_with("es")) out.push_back(t.substr(0, n - 2));
  if (n > 1 && t.ends_with("s")) out.push_back(t.substr(0, n - 1));
  return out;
}

std::vector<std::string> ConceptExtractor::verb_candidates(
    const std::string& t) const {
  std::vector<std::string> out = noun_candidates(t);
  size_t n = t.size();
  if (n > 3 && t.ends_with("ing")) {
    out.push_back(t.substr(0, n - 3));
    out.push_back(t.substr(0, n - 3) + "e");  // making -> make
  }
  if (n > 2 && t.ends_with("ed")) {
    out.push_back(t.substr(0, n - 2));
    out.push_back(t.substr(0, n - 1));  // baked -> bake
  }
  return out;
}

std::set<Concept> ConceptExtractor::extract(std::string_view sentence) const {
  std::set<Concept> concepts;
  std::vector<std::string> raw = tokenize(sentence);
  std::string prev;
  for (const std::string& r : raw) {
    std::string token = to_lower(strip_punct(r));
    if (token.empty()) continue;
    std::string before = prev;
    prev = token;
    if (stopwords_.contains(token)) continue;

    std::string mapped = token;
    if (auto it = exceptions_.find(token); it != exceptions_.end()) {
      mapped = it->second;
    }

    std::string noun_lemma;
    for (const std::string& cand : noun_candidates(mapped)) {
      if (nouns_.contains(cand)) {
        noun_lemma = cand;
        break;
      }
    }
    std::string verb_lemma;
    for (const std::string& cand : verb_candidates(mapped)) {
      if (verbs_.contains(cand)) {
        verb_lemma = cand;
        break;
      }
    }

    std::string lemma;
    if (!noun_lemma.empty() && !verb_lemma.empty()) {
      bool read_as_verb = before == "to" || kPronouns.count(before) > 0;
      lemma = read_as_verb ? verb_lemma : noun_lemma;
    } else if (!noun_lemma.empty()) {
      lemma = noun_lemma;
    } else if (!verb_lemma.empty()) {
      lemma = verb_lemma;
    } else {
      continue;  // not a recognized content word
    }

    try {
      concepts.insert(Concept(lemma));
    } catch (const ValidationError&) {
      // Lexicon entries with odd characters are skipped, not fatal.
    }
  }
  return concepts;
}

ConceptExtractor load_extractor(const std::string& data_dir) {
  return ConceptExtractor(Lexicon::load(data_dir + "/verbs.txt"),
                          Lexicon::load(data_dir + "/nouns.txt"),
                          Lexicon::load(data_dir + "/stopwords.txt"),
                          load_exception_table(data_dir +
                                               "/lemma_exceptions.txt"));
}

}  // namespace skg
