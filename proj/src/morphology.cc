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

#include "termspace/unicode.h"

namespace termspace {

std::vector<MorphAnalysis> Segment(std::string_view form, const Lexicon &lexicon) {
  std::vector<MorphAnalysis> result;
  std::vector<CodePoint> cps = DecodeUtf8(form);
  // Split points at code point boundaries, longest stem first. The stem
  // must be non-empty; the inflexion may be empty.
  for (size_t n = cps.size(); n >= 1; --n) {
    size_t cut = cps[n - 1].end;
    std::string_view stem = form.substr(0, cut);
    std::string_view ending = form.substr(cut);
    std::vector<const InflexionEntry *> inflexions = lexicon.FindInflexions(ending);
    if (inflexions.empty()) continue;
    for (const StemEntry *s : lexicon.FindStems(stem)) {
      for (const InflexionEntry *inf : inflexions) {
        MorphAnalysis a;
        a.stem = s->stem;
        a.inflexion = inf->form;
        a.pos = s->pos;
        a.gram_attrs = s->gram_attrs;
        a.gram_attrs.insert(inf->gram_attrs.begin(), inf->gram_attrs.end());
        a.sem_attrs = s->sem_attrs;
        result.push_back(std::move(a));
      }
    }
  }
  return result;
}

MorphAnalysis FallbackAnalysis(std::string_view surface, const Lexicon &lexicon) {
  MorphAnalysis a;
  a.stem = ToLower(surface);
  a.fallback = true;
  size_t letters = 0;
  bool all_caps = true;
  for (const CodePoint &cp : DecodeUtf8(surface)) {
    if (!IsLetter(cp.value)) continue;
    ++letters;
    if (!IsUpper(cp.value)) all_caps = false;
  }
  bool abbreviation = lexicon.IsAbbreviation(a.stem) || (all_caps && letters >= 2);
  a.pos = abbreviation ? PartOfSpeech::kAbbreviation : PartOfSpeech::kOther;
  return a;
}

std::vector<AnalyzedToken> AnalyzeTokens(const std::vector<Token> &tokens,
                                         const Lexicon &lexicon) {
  std::vector<AnalyzedToken> result;
  result.reserve(tokens.size());
  for (const Token &t : tokens) {
    AnalyzedToken at;
    at.token = t;
    at.lower = ToLower(t.surface);
    if (t.kind == TokenKind::kWord) {
      at.function_word = lexicon.IsFunctionWord(at.lower);
      at.stopword = !at.function_word && lexicon.IsStopword(at.lower);
      if (at.is_content()) at.candidates = Segment(at.lower, lexicon);
    }
    result.push_back(std::move(at));
  }
  return result;
}

std::optional<size_t> NeighborContentWord(const std::vector<AnalyzedToken> &tokens, size_t i,
                                          int step, size_t max_gap) {
  size_t gap = 0;
  for (long j = static_cast<long>(i) + step; j >= 0 && j < static_cast<long>(tokens.size());
       j += step) {
    const AnalyzedToken &t = tokens[j];
    if (t.is_content()) return static_cast<size_t>(j);
    if (t.token.kind != TokenKind::kWord) return std::nullopt;
    if (++gap > max_gap) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<const AnalyzedToken *> FunctionWordsBetween(
    const std::vector<AnalyzedToken> &tokens, size_t i, size_t j) {
  std::vector<const AnalyzedToken *> between;
  for (size_t k = i + 1; k < j; ++k) {
    if (tokens[k].function_word) between.push_back(&tokens[k]);
  }
  return between;
}

DeterminantKey FormDeterminant(const MorphAnalysis &first, const MorphAnalysis &second,
                               const std::vector<const AnalyzedToken *> &between) {
  DeterminantKey key;
  key.first_inflexion = first.inflexion;
  key.second_inflexion = second.inflexion;
  for (const AnalyzedToken *t : between) key.function_words.push_back(t->lower);
  return key;
}

namespace {

bool Relates(const MorphAnalysis &first, const MorphAnalysis &second,
             const std::vector<const AnalyzedToken *> &between, const Lexicon &lexicon) {
  auto ids = lexicon.LookupDeterminant(FormDeterminant(first, second, between));
  return lexicon.MatchCorrelator(ids, first.sem_attrs, second.sem_attrs).has_value();
}

}  // namespace

void Disambiguate(std::vector<AnalyzedToken> *tokens, const Lexicon &lexicon) {
  std::vector<AnalyzedToken> &ts = *tokens;
  for (size_t i = 0; i < ts.size(); ++i) {
    AnalyzedToken &t = ts[i];
    if (!t.is_content()) continue;
    if (t.candidates.empty()) {
      t.candidates.push_back(FallbackAnalysis(t.token.surface, lexicon));
      t.selected = 0;
      continue;
    }
    t.selected = 0;
    if (t.candidates.size() == 1) continue;

    std::optional<size_t> chosen;
    if (auto right = NeighborContentWord(ts, i, +1)) {
      auto between = FunctionWordsBetween(ts, i, *right);
      std::vector<MorphAnalysis> next = ts[*right].candidates;
      if (next.empty()) next.push_back(FallbackAnalysis(ts[*right].token.surface, lexicon));
      for (size_t c = 0; c < t.candidates.size() && !chosen; ++c) {
        for (const MorphAnalysis &d : next) {
          if (Relates(t.candidates[c], d, between, lexicon)) {
            chosen = c;
            break;
          }
        }
      }
    }
    if (!chosen) {
      if (auto left = NeighborContentWord(ts, i, -1)) {
        auto between = FunctionWordsBetween(ts, *left, i);
        const MorphAnalysis &prev = ts[*left].analysis();
        for (size_t c = 0; c < t.candidates.size(); ++c) {
          if (Relates(prev, t.candidates[c], between, lexicon)) {
            chosen = c;
            break;
          }
        }
      }
    }
    if (chosen) t.selected = *chosen;
  }
}

}  // namespace termspace
