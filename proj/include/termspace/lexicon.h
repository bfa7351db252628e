// Copyright 2026 The termspace Authors. All Rights Reserved.
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

#ifndef TERMSPACE_LEXICON_H_
#define TERMSPACE_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace termspace {

enum class PartOfSpeech { kNoun, kVerb, kAdjective, kAdverb, kAbbreviation, kOther };

std::string_view PosName(PartOfSpeech pos);
std::optional<PartOfSpeech> ParsePos(std::string_view name);

using AttrSet = std::set<std::string>;

struct StemEntry {
  std::string stem;
  PartOfSpeech pos = PartOfSpeech::kOther;
  AttrSet gram_attrs;
  AttrSet sem_attrs;

  bool operator==(const StemEntry &) const = default;
};

struct InflexionEntry {
  std::string form;  // empty for the zero inflexion
  AttrSet gram_attrs;

  bool operator==(const InflexionEntry &) const = default;
};

// Grammatical context of a word pair: the two inflexions and the function
// words found between the words.
struct DeterminantKey {
  std::string first_inflexion;
  std::vector<std::string> function_words;
  std::string second_inflexion;

  auto operator<=>(const DeterminantKey &) const = default;
};

std::string ToString(const DeterminantKey &key);

enum class HeadPosition { kFirst, kSecond };

// Semantic pattern of a relation: the word at head_position is the head and
// the pair (head attr, dependent attr) must be in attr_pairs.
struct CorrelatorEntry {
  std::string id;
  std::string relation_name;
  HeadPosition head_position = HeadPosition::kFirst;
  std::set<std::pair<std::string, std::string>> attr_pairs;

  bool operator==(const CorrelatorEntry &) const = default;
};

struct CorrelatorMatch {
  std::string relation_name;
  std::string correlator_id;
  HeadPosition head_position = HeadPosition::kFirst;

  bool operator==(const CorrelatorMatch &) const = default;
};

// File locations of a lexicon. FromDirectory() uses the standard names
// stems.tsv, inflexions.tsv, determinants.tsv, correlators.tsv,
// function_words.txt, stopwords.txt and abbreviations.txt.
struct LexiconPaths {
  std::filesystem::path stems;
  std::filesystem::path inflexions;
  std::filesystem::path determinants;
  std::filesystem::path correlators;
  std::filesystem::path function_words;
  std::filesystem::path stopwords;
  std::filesystem::path abbreviations;

  static LexiconPaths FromDirectory(const std::filesystem::path &dir);
};

// Immutable dictionaries of stems, inflexions, determinants and correlators
// plus the closed word lists. All lookups take lowercased text.
class Lexicon {
 public:
  // Stems in file order. The order is the dictionary order used for
  // tie-breaking throughout the pipeline.
  const std::vector<StemEntry> &stems() const { return stems_; }
  const std::vector<InflexionEntry> &inflexions() const { return inflexions_; }
  const std::vector<CorrelatorEntry> &correlators() const { return correlators_; }
  const std::map<DeterminantKey, std::vector<std::string>> &determinants() const {
    return determinants_;
  }

  // All entries for a stem string, in file order.
  std::vector<const StemEntry *> FindStems(std::string_view stem) const;
  // All entries for an inflexion form ("" is the zero inflexion).
  std::vector<const InflexionEntry *> FindInflexions(std::string_view form) const;
  const CorrelatorEntry *FindCorrelator(std::string_view id) const;

  // Correlator ids for a determinant key; empty if the key is unknown.
  std::span<const std::string> LookupDeterminant(const DeterminantKey &key) const;

  // First correlator in `ids` whose pairs contain (head attr, dependent
  // attr) for some attr of each word. The head is chosen by the
  // correlator's head position.
  std::optional<CorrelatorMatch> MatchCorrelator(std::span<const std::string> ids,
                                                 const AttrSet &first_attrs,
                                                 const AttrSet &second_attrs) const;
  // Every matching correlator, in list order.
  std::vector<CorrelatorMatch> MatchCorrelators(std::span<const std::string> ids,
                                                const AttrSet &first_attrs,
                                                const AttrSet &second_attrs) const;

  bool IsFunctionWord(std::string_view word) const;
  bool IsStopword(std::string_view word) const;
  bool IsAbbreviation(std::string_view word) const;

  const std::vector<std::string> &function_words() const { return function_words_; }
  const std::vector<std::string> &stopwords() const { return stopwords_; }
  const std::vector<std::string> &abbreviations() const { return abbreviations_; }

  bool operator==(const Lexicon &other) const;

 private:
  friend Lexicon LoadLexicon(const LexiconPaths &paths);

  void BuildIndexes();

  std::vector<StemEntry> stems_;
  std::vector<InflexionEntry> inflexions_;
  std::vector<CorrelatorEntry> correlators_;
  std::map<DeterminantKey, std::vector<std::string>> determinants_;
  std::vector<std::string> function_words_;
  std::vector<std::string> stopwords_;
  std::vector<std::string> abbreviations_;

  std::unordered_multimap<std::string, size_t> stem_index_;
  std::unordered_multimap<std::string, size_t> inflexion_index_;
  std::unordered_map<std::string, size_t> correlator_index_;
  std::unordered_set<std::string> function_word_set_;
  std::unordered_set<std::string> stopword_set_;
  std::unordered_set<std::string> abbreviation_set_;
};

// Loads and validates a lexicon. Throws Error(kParse) naming file and line
// for malformed rows and Error(kValidation) for unknown correlator ids or
// determinants whose correlators share an attribute pair.
Lexicon LoadLexicon(const LexiconPaths &paths);
Lexicon LoadLexicon(const std::filesystem::path &dir);

}  // namespace termspace

#endif  // TERMSPACE_LEXICON_H_
