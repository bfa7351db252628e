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

#ifndef TERMSPACE_SYNTAGMA_H_
#define TERMSPACE_SYNTAGMA_H_

#include <optional>
#include <string>
#include <vector>

#include "termspace/lexicon.h"
#include "termspace/morphology.h"
#include "termspace/textcore.h"

namespace termspace {

// Relation name that marks a subject-predicate link.
inline constexpr char kPredicativeRelation[] = "predicative";

// Directed link between two tokens of a sentence (token indices).
struct RelationEdge {
  size_t head = 0;
  size_t dependent = 0;
  std::string relation_name;
  std::string correlator_id;

  bool operator==(const RelationEdge &) const = default;
};

// A connected group of content words. `main` is the head of the first
// edge (or the only member); `last` is the word attached most recently.
struct Syntagma {
  std::vector<size_t> members;  // token indices, ascending
  std::vector<RelationEdge> edges;
  size_t main = 0;
  size_t last = 0;
};

struct SentenceParse {
  std::string document_id;
  size_t sentence_index = 0;
  std::vector<AnalyzedToken> tokens;
  std::vector<Syntagma> syntagmas;
  size_t unlinked_count = 0;  // number of syntagmas left
  size_t branches = 0;        // options explored by the search
  bool truncated = false;     // search hit the branch cap

  std::vector<RelationEdge> edges() const;
};

struct CoreRelation {
  size_t left = 0;
  size_t right = 0;
  RelationEdge edge;
};

struct ParseOptions {
  size_t max_branches = 10000;
};

// Determinant key for two analyzed tokens and the function words between.
DeterminantKey FormDeterminant(const AnalyzedToken &first, const AnalyzedToken &second,
                               const std::vector<const AnalyzedToken *> &between);

// Leftmost pair of neighbouring content words (separated by at most four
// function words or stopwords) linked by a predicative correlator.
std::optional<CoreRelation> FindCore(const std::vector<AnalyzedToken> &tokens,
                                     const Lexicon &lexicon);

// Groups the content words of disambiguated tokens into syntagmas.
//
// Words are placed starting from the core pair: first the words to its
// right, left to right, then the words to its left, right to left. Without
// a core, all words go left to right. A word attaches to the main word or
// the last attached word of the current syntagma if some correlator of the
// pair's determinant matches; otherwise it opens a new syntagma. Finally
// syntagmas are merged through links between their main or last words.
// Every alternative link is a search branch; the parse with the fewest
// syntagmas wins and ties go to the first one found.
SentenceParse ParseTokens(std::vector<AnalyzedToken> tokens, const Lexicon &lexicon,
                          const ParseOptions &options = {});

// Analyze, disambiguate and parse one sentence.
SentenceParse ParseSentence(const Sentence &sentence, const Lexicon &lexicon,
                            const ParseOptions &options = {});

}  // namespace termspace

#endif  // TERMSPACE_SYNTAGMA_H_
