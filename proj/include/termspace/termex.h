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

#ifndef TERMSPACE_TERMEX_H_
#define TERMSPACE_TERMEX_H_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "termspace/lexicon.h"
#include "termspace/syntagma.h"
#include "termspace/textcore.h"

namespace termspace {

// Longest term, in words, that extraction will produce.
inline constexpr size_t kMaxTermWords = 15;

enum class TermKind { kNonCompositional, kCompositional };

std::string_view TermKindName(TermKind kind);

// Morphological information carried by one lemma of a term.
struct TermWord {
  std::string lemma;  // stem, or the lowercased function word
  PartOfSpeech pos = PartOfSpeech::kOther;
  AttrSet gram_attrs;
  AttrSet sem_attrs;
  bool function_word = false;

  bool operator==(const TermWord &) const = default;
};

// Edge between two lemmas of a term (indices into Term::words).
struct TermEdge {
  size_t head = 0;
  size_t dependent = 0;
  std::string relation_name;
  std::string correlator_id;

  bool operator==(const TermEdge &) const = default;
};

struct Term {
  std::vector<TermWord> words;
  std::string key;  // lemmas joined with '_'
  TermKind kind = TermKind::kNonCompositional;
  size_t head = 0;
  std::vector<TermEdge> edges;

  size_t word_count() const { return words.size(); }
  std::vector<std::string> lemmas() const;

  bool operator==(const Term &) const = default;
};

// Where a term occurs: token range [begin, end) of a sentence.
struct TermOccurrence {
  std::string document_id;
  size_t sentence_index = 0;
  size_t begin = 0;
  size_t end = 0;
  std::string key;
};

struct TermCandidate {
  Term term;
  TermOccurrence occurrence;
};

// Relations that may join the words of a term.
bool IsTermRelation(std::string_view relation_name);

// Candidate terms of a parsed sentence: each noun or abbreviation, plus
// every contiguous run of nouns, adjectives and abbreviations (with the
// function words between them) whose words form one tree of defining,
// object, affiliation or uniformity edges rooted at a noun or abbreviation.
// Candidates come out ordered by start position, then length.
std::vector<TermCandidate> ExtractCandidates(const SentenceParse &parse);

// Checks the constraints on a term: noun or abbreviation head, term
// relations only, a genitive dependent for noun-noun edges other than
// uniformity, an adjective dependent whose attributes occur in a
// correlator of that relation, and 2..15 words for compositional terms.
bool IsValidTerm(const Term &term, const Lexicon &lexicon);
std::vector<Term> ValidateTerms(const std::vector<Term> &candidates, const Lexicon &lexicon);

// Valid contiguous sub-terms of a compositional term, longest first.
// Throws std::invalid_argument for a non-compositional term.
std::vector<Term> Decompose(const Term &term, const Lexicon &lexicon);

struct AnnotatedSentence {
  SentenceParse parse;
  std::vector<TermCandidate> terms;  // validated
  std::vector<std::string> stream;   // emitted term stream tokens
};

struct VocabEntry {
  std::string key;
  size_t frequency = 0;  // occurrences in the term stream
  PartOfSpeech head_pos = PartOfSpeech::kOther;

  bool operator==(const VocabEntry &) const = default;
};

struct AnnotatedCorpus {
  std::string id;
  std::string corpus_id;
  std::vector<AnnotatedSentence> sentences;
  std::vector<VocabEntry> vocabulary;  // sorted by key
};

// Replaces each maximal valid term (leftmost, longest) by its key and every
// other content word by its stem.
std::vector<std::string> EmitTermStream(const SentenceParse &parse,
                                        const std::vector<TermCandidate> &terms);

AnnotatedSentence AnnotateSentence(const Sentence &sentence, const Lexicon &lexicon);

// Runs the whole pipeline over a corpus. `progress`, if given, receives
// the fraction of documents done.
AnnotatedCorpus AnnotateCorpus(const Corpus &corpus, const Lexicon &lexicon,
                               const std::function<void(double)> &progress = nullptr);

// Writes sentences.jsonl, stream.txt, vocab.tsv, terms.tsv and meta.json.
void SaveAnnotated(const AnnotatedCorpus &annotated, const std::filesystem::path &dir);

// Reads the term stream (one sentence per line, tokens separated by spaces).
std::vector<std::vector<std::string>> LoadTermStream(const std::filesystem::path &file);
std::vector<VocabEntry> LoadVocabulary(const std::filesystem::path &file);

}  // namespace termspace

#endif  // TERMSPACE_TERMEX_H_
