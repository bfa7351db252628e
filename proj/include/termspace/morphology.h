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

#ifndef TERMSPACE_MORPHOLOGY_H_
#define TERMSPACE_MORPHOLOGY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termspace/lexicon.h"
#include "termspace/textcore.h"

namespace termspace {

// One stem + inflexion reading of a word form. Attributes are the union of
// the stem's and the inflexion's.
struct MorphAnalysis {
  std::string stem;
  std::string inflexion;
  PartOfSpeech pos = PartOfSpeech::kOther;
  AttrSet gram_attrs;
  AttrSet sem_attrs;
  bool fallback = false;  // synthesized for an out-of-vocabulary form

  bool operator==(const MorphAnalysis &) const = default;
};

struct AnalyzedToken {
  Token token;
  std::string lower;  // lowercased surface
  bool function_word = false;
  bool stopword = false;
  std::vector<MorphAnalysis> candidates;
  std::optional<size_t> selected;

  // Words that carry meaning: not function words, not stopwords.
  bool is_content() const {
    return token.kind == TokenKind::kWord && !function_word && !stopword;
  }
  const MorphAnalysis &analysis() const { return candidates.at(*selected); }
};

// All (stem, inflexion) splits of a lowercased form, longest stem first.
// Splits of equal length follow stem and inflexion file order. A stem
// listed under several parts of speech yields one analysis per entry.
std::vector<MorphAnalysis> Segment(std::string_view form, const Lexicon &lexicon);

// Analysis used for a form the lexicon cannot split. Forms listed as
// abbreviations, or written in capitals (two or more letters), become
// abbreviations; everything else is tagged "other".
MorphAnalysis FallbackAnalysis(std::string_view surface, const Lexicon &lexicon);

// Classifies tokens and fills candidates for content words (no selection).
std::vector<AnalyzedToken> AnalyzeTokens(const std::vector<Token> &tokens,
                                         const Lexicon &lexicon);

// Selects one candidate per content word, left to right. A candidate is
// kept if it forms a known relation with the next content word (any of its
// candidates), otherwise with the already selected previous content word;
// the first such candidate wins, else the first candidate. Words with no
// candidate get a fallback analysis.
void Disambiguate(std::vector<AnalyzedToken> *tokens, const Lexicon &lexicon);

// Index of the next (step=+1) or previous (step=-1) content word reachable
// from token i across at most `max_gap` function words or stopwords.
std::optional<size_t> NeighborContentWord(const std::vector<AnalyzedToken> &tokens, size_t i,
                                          int step, size_t max_gap = 4);

// Function words strictly between tokens i < j, in order.
std::vector<const AnalyzedToken *> FunctionWordsBetween(
    const std::vector<AnalyzedToken> &tokens, size_t i, size_t j);

// Determinant key for an ordered word pair and the function words between.
DeterminantKey FormDeterminant(const MorphAnalysis &first, const MorphAnalysis &second,
                               const std::vector<const AnalyzedToken *> &between);

}  // namespace termspace

#endif  // TERMSPACE_MORPHOLOGY_H_
