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

#include "termspace/morphology.h"

#include <random>
#include <set>
#include <tuple>

#include "test_util.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

namespace termspace {
namespace {

using testing::Fixture;
using testing::FixtureLexicon;
using testing::ReadRows;

std::vector<AnalyzedToken> Analyze(const std::string &text) {
  const Lexicon &lex = FixtureLexicon();
  std::vector<AnalyzedToken> tokens = AnalyzeTokens(Tokenize(text), lex);
  Disambiguate(&tokens, lex);
  return tokens;
}

std::string Reading(const AnalyzedToken &t) {
  const MorphAnalysis &a = t.analysis();
  return a.stem + "+" + (a.inflexion.empty() ? "-" : a.inflexion) + ":" +
         std::string(PosName(a.pos));
}

TEST_CASE("gold word forms of the fixture corpus") {
  const Lexicon &lex = FixtureLexicon();
  auto gold = ReadRows(Fixture("gold/morph.gold.tsv"));
  REQUIRE(gold.size() >= 40);
  size_t row = 0;
  for (const Document &doc : testing::FixtureDocuments()) {
    for (const Sentence &s : SplitDocument(doc, [&](std::string_view w) {
           return lex.IsAbbreviation(w);
         })) {
      std::vector<AnalyzedToken> tokens = AnalyzeTokens(s.tokens, lex);
      Disambiguate(&tokens, lex);
      for (const AnalyzedToken &t : tokens) {
        if (!t.is_content()) continue;
        REQUIRE(row < gold.size());
        const auto &g = gold[row++];
        INFO("row " << row << ": " << g[1]);
        CHECK(g[0] == doc.id);
        CHECK(t.token.surface == g[1]);
        CHECK(t.analysis().stem == g[2]);
        CHECK((t.analysis().inflexion.empty() ? "-" : t.analysis().inflexion) == g[3]);
        CHECK(PosName(t.analysis().pos) == g[4]);
      }
    }
  }
  CHECK(row == gold.size());
}

TEST_CASE("segment lists every split, longest stem first") {
  const Lexicon &lex = FixtureLexicon();
  auto learning = Segment("learning", lex);
  REQUIRE(learning.size() == 2);
  CHECK(learning[0].stem == "learning");
  CHECK(learning[0].inflexion.empty());
  CHECK(learning[0].pos == PartOfSpeech::kNoun);
  CHECK(learning[1].stem == "learn");
  CHECK(learning[1].inflexion == "ing");
  CHECK(learning[1].gram_attrs.count("ger"));

  auto trains = Segment("trains", lex);
  REQUIRE(trains.size() == 2);
  CHECK(trains[0].pos == PartOfSpeech::kNoun);
  CHECK(trains[1].pos == PartOfSpeech::kVerb);

  CHECK(Segment("zebra", lex).empty());
}

// All (stem, inflexion, pos) readings by trying every split point.
std::set<std::tuple<std::string, std::string, PartOfSpeech>> BruteForceSplits(
    const std::string &form) {
  std::set<std::tuple<std::string, std::string, PartOfSpeech>> out;
  for (const auto &row : ReadRows(Fixture("lexicon/stems.tsv"))) {
    const std::string &stem = row[0];
    if (form.compare(0, stem.size(), stem) != 0) continue;
    std::string rest = form.substr(stem.size());
    for (const auto &inf : ReadRows(Fixture("lexicon/inflexions.tsv"))) {
      std::string f = inf[0] == "-" ? "" : inf[0];
      if (f == rest) out.emplace(stem, rest, *ParsePos(row[1]));
    }
  }
  return out;
}

TEST_CASE("segment agrees with brute force on generated forms") {
  const Lexicon &lex = FixtureLexicon();
  std::mt19937 rng(5);
  const auto &stems = lex.stems();
  const auto &infl = lex.inflexions();
  for (int i = 0; i < 500; ++i) {
    std::string form = stems[rng() % stems.size()].stem + infl[rng() % infl.size()].form;
    if (rng() % 4 == 0) form += "x";  // unknown tail
    auto analyses = Segment(form, lex);
    std::set<std::tuple<std::string, std::string, PartOfSpeech>> got;
    size_t previous = std::string::npos;
    for (const MorphAnalysis &a : analyses) {
      CHECK(a.stem + a.inflexion == form);
      CHECK(a.stem.size() <= previous);
      previous = a.stem.size();
      got.emplace(a.stem, a.inflexion, a.pos);
      const StemEntry *entry = nullptr;
      for (const StemEntry *e : lex.FindStems(a.stem)) {
        if (e->pos == a.pos) entry = e;
      }
      REQUIRE(entry != nullptr);
      for (const std::string &attr : entry->sem_attrs) CHECK(a.sem_attrs.count(attr));
    }
    CHECK(got.size() == analyses.size());
    CHECK(got == BruteForceSplits(form));
  }
}

TEST_CASE("disambiguation picks the reading that relates to a neighbor") {
  auto tokens = Analyze("Learning systems analyze texts.");
  CHECK(Reading(tokens[0]) == "learn+ing:verb");

  tokens = Analyze("Researchers train neural embeddings.");
  CHECK(Reading(tokens[1]) == "train+-:verb");

  tokens = Analyze("The algorithm trains models.");
  CHECK(Reading(tokens[2]) == "train+s:verb");

  tokens = Analyze("Lexical semantics.");
  CHECK(Reading(tokens[1]) == "semantics+-:noun");

  // No neighbor decides: the first candidate wins.
  tokens = Analyze("Learning.");
  CHECK(Reading(tokens[0]) == "learning+-:noun");
}

TEST_CASE("fallback analyses") {
  const Lexicon &lex = FixtureLexicon();
  CHECK(FallbackAnalysis("Ukrainian", lex).pos == PartOfSpeech::kOther);
  CHECK(FallbackAnalysis("GPU", lex).pos == PartOfSpeech::kAbbreviation);
  CHECK(FallbackAnalysis("approx", lex).pos == PartOfSpeech::kAbbreviation);
  CHECK(FallbackAnalysis("A", lex).pos == PartOfSpeech::kOther);
  MorphAnalysis a = FallbackAnalysis("Kyiv", lex);
  CHECK(a.fallback);
  CHECK(a.stem == "kyiv");

  auto tokens = Analyze("The GPU parses Ukrainian.");
  CHECK(tokens[1].analysis().pos == PartOfSpeech::kAbbreviation);
  CHECK(tokens[3].analysis().fallback);
}

TEST_CASE("token classes") {
  auto tokens = Analyze("The models of texts, and 3 maps.");
  CHECK(tokens[0].stopword);
  CHECK_FALSE(tokens[0].is_content());
  CHECK(tokens[2].function_word);
  CHECK(tokens[1].is_content());
  CHECK_FALSE(tokens[4].is_content());  // comma
  CHECK_FALSE(tokens[6].is_content());  // number
  for (const AnalyzedToken &t : tokens) CHECK(t.is_content() == t.selected.has_value());
}

TEST_CASE("neighbor content words and determinants") {
  auto tokens = Analyze("analysis of the texts and, maps");
  auto next = NeighborContentWord(tokens, 0, +1);
  REQUIRE(next);
  CHECK(*next == 3);
  CHECK(NeighborContentWord(tokens, 3, -1) == 0);
  // punctuation blocks the search
  CHECK_FALSE(NeighborContentWord(tokens, 3, +1));
  auto between = FunctionWordsBetween(tokens, 0, 3);
  REQUIRE(between.size() == 1);
  CHECK(between[0]->lower == "of");
  DeterminantKey key = FormDeterminant(tokens[0].analysis(), tokens[3].analysis(), between);
  CHECK(key == DeterminantKey{"", {"of"}, "s"});

  auto far = Analyze("models of of of of of texts");
  CHECK_FALSE(NeighborContentWord(far, 0, +1));
  auto near = Analyze("models of of of of texts");
  CHECK(NeighborContentWord(near, 0, +1) == 5);
}

}  // namespace
}  // namespace termspace
