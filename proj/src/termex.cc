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

#include "termspace/termex.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "termspace/error.h"

namespace termspace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string_view TermKindName(TermKind kind) {
  return kind == TermKind::kCompositional ? "compositional" : "non-compositional";
}

std::vector<std::string> Term::lemmas() const {
  std::vector<std::string> result;
  for (const TermWord &w : words) result.push_back(w.lemma);
  return result;
}

bool IsTermRelation(std::string_view relation_name) {
  return relation_name == "defining" || relation_name == "object" ||
         relation_name == "affiliation" || relation_name == "uniformity";
}

namespace {

bool IsNominal(PartOfSpeech pos) {
  return pos == PartOfSpeech::kNoun || pos == PartOfSpeech::kAbbreviation;
}

bool MayJoinTerm(PartOfSpeech pos) {
  return IsNominal(pos) || pos == PartOfSpeech::kAdjective;
}

std::string JoinKey(const std::vector<TermWord> &words) {
  std::string key;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) key += '_';
    key += words[i].lemma;
  }
  return key;
}

// Finds the unique word without an incoming edge among the content words
// of a candidate; the edges must span all of them.
std::optional<size_t> TreeRoot(const std::vector<TermWord> &words,
                               const std::vector<TermEdge> &edges) {
  size_t content = 0;
  std::vector<int> incoming(words.size(), 0);
  for (size_t i = 0; i < words.size(); ++i) {
    if (!words[i].function_word) ++content;
  }
  if (edges.size() + 1 != content) return std::nullopt;
  // Union-find over word indices to check connectivity.
  std::vector<size_t> parent(words.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const TermEdge &e : edges) {
    ++incoming[e.dependent];
    size_t a = find(e.head);
    size_t b = find(e.dependent);
    if (a == b) return std::nullopt;
    parent[a] = b;
  }
  std::optional<size_t> root;
  for (size_t i = 0; i < words.size(); ++i) {
    if (words[i].function_word || incoming[i] > 0) continue;
    if (root) return std::nullopt;
    root = i;
  }
  return root;
}

// Builds the term spanning word indices [from, to] of `term`, or nothing if
// those words do not form a rooted tree.
std::optional<Term> SubTerm(const Term &term, size_t from, size_t to) {
  Term sub;
  sub.words.assign(term.words.begin() + from, term.words.begin() + to + 1);
  for (const TermEdge &e : term.edges) {
    if (e.head >= from && e.head <= to && e.dependent >= from && e.dependent <= to) {
      sub.edges.push_back({e.head - from, e.dependent - from, e.relation_name, e.correlator_id});
    }
  }
  auto root = TreeRoot(sub.words, sub.edges);
  if (!root) return std::nullopt;
  sub.head = *root;
  sub.key = JoinKey(sub.words);
  sub.kind = sub.words.size() == 1 ? TermKind::kNonCompositional : TermKind::kCompositional;
  return sub;
}

}  // namespace

std::vector<TermCandidate> ExtractCandidates(const SentenceParse &parse) {
  const std::vector<AnalyzedToken> &tokens = parse.tokens;
  std::vector<size_t> content;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_content() && tokens[i].selected) content.push_back(i);
  }
  std::vector<RelationEdge> edges;
  for (const RelationEdge &e : parse.edges()) {
    if (IsTermRelation(e.relation_name)) edges.push_back(e);
  }

  std::vector<TermCandidate> result;
  for (size_t s = 0; s < content.size(); ++s) {
    if (!MayJoinTerm(tokens[content[s]].analysis().pos)) continue;
    for (size_t e = s; e < content.size(); ++e) {
      if (!MayJoinTerm(tokens[content[e]].analysis().pos)) break;
      Term term;
      std::map<size_t, size_t> word_of_token;
      for (size_t t = content[s]; t <= content[e]; ++t) {
        const AnalyzedToken &tok = tokens[t];
        TermWord w;
        if (tok.is_content()) {
          const MorphAnalysis &a = tok.analysis();
          w.lemma = a.stem;
          w.pos = a.pos;
          w.gram_attrs = a.gram_attrs;
          w.sem_attrs = a.sem_attrs;
        } else if (tok.function_word) {
          w.lemma = tok.lower;
          w.function_word = true;
        } else {
          continue;
        }
        word_of_token[t] = term.words.size();
        term.words.push_back(std::move(w));
      }
      if (term.words.size() > kMaxTermWords) break;
      for (const RelationEdge &edge : edges) {
        auto h = word_of_token.find(edge.head);
        auto d = word_of_token.find(edge.dependent);
        if (h == word_of_token.end() || d == word_of_token.end()) continue;
        term.edges.push_back({h->second, d->second, edge.relation_name, edge.correlator_id});
      }
      auto root = TreeRoot(term.words, term.edges);
      if (!root || !IsNominal(term.words[*root].pos)) continue;
      term.head = *root;
      term.key = JoinKey(term.words);
      term.kind = s == e ? TermKind::kNonCompositional : TermKind::kCompositional;
      TermOccurrence occ{parse.document_id, parse.sentence_index, content[s], content[e] + 1,
                         term.key};
      result.push_back({std::move(term), std::move(occ)});
    }
  }
  return result;
}

bool IsValidTerm(const Term &term, const Lexicon &lexicon) {
  if (term.words.empty() || term.head >= term.words.size()) return false;
  if (!IsNominal(term.words[term.head].pos)) return false;
  if (term.kind == TermKind::kNonCompositional) {
    return term.words.size() == 1 && term.edges.empty();
  }
  if (term.words.size() < 2 || term.words.size() > kMaxTermWords) return false;
  auto root = TreeRoot(term.words, term.edges);
  if (!root || *root != term.head) return false;
  for (const TermEdge &e : term.edges) {
    if (!IsTermRelation(e.relation_name)) return false;
    const TermWord &head = term.words[e.head];
    const TermWord &dep = term.words[e.dependent];
    if (head.pos == PartOfSpeech::kNoun && dep.pos == PartOfSpeech::kNoun &&
        e.relation_name != "uniformity" && dep.gram_attrs.count("gen") == 0) {
      return false;
    }
    if (dep.pos == PartOfSpeech::kAdjective) {
      bool licensed = false;
      for (const CorrelatorEntry &c : lexicon.correlators()) {
        if (c.relation_name != e.relation_name) continue;
        for (const auto &[h, d] : c.attr_pairs) {
          if (head.sem_attrs.count(h) > 0 && dep.sem_attrs.count(d) > 0) licensed = true;
        }
      }
      if (!licensed) return false;
    }
  }
  return true;
}

std::vector<Term> ValidateTerms(const std::vector<Term> &candidates, const Lexicon &lexicon) {
  std::vector<Term> valid;
  for (const Term &t : candidates) {
    if (IsValidTerm(t, lexicon)) valid.push_back(t);
  }
  return valid;
}

std::vector<Term> Decompose(const Term &term, const Lexicon &lexicon) {
  if (term.kind != TermKind::kCompositional) {
    throw std::invalid_argument("cannot decompose non-compositional term '" + term.key + "'");
  }
  std::vector<Term> result;
  std::set<std::string> seen;
  size_t n = term.words.size();
  for (size_t len = n - 1; len >= 1; --len) {
    for (size_t from = 0; from + len <= n; ++from) {
      size_t to = from + len - 1;
      if (term.words[from].function_word || term.words[to].function_word) continue;
      auto sub = SubTerm(term, from, to);
      if (!sub || !IsValidTerm(*sub, lexicon)) continue;
      if (seen.insert(sub->key).second) result.push_back(std::move(*sub));
    }
  }
  return result;
}

std::vector<std::string> EmitTermStream(const SentenceParse &parse,
                                        const std::vector<TermCandidate> &terms) {
  std::map<size_t, size_t> longest;  // begin token -> end token
  for (const TermCandidate &c : terms) {
    size_t &end = longest[c.occurrence.begin];
    end = std::max(end, c.occurrence.end);
  }
  std::map<std::pair<size_t, size_t>, const std::string *> keys;
  for (const TermCandidate &c : terms) {
    keys[{c.occurrence.begin, c.occurrence.end}] = &c.term.key;
  }

  std::vector<std::string> stream;
  const auto &tokens = parse.tokens;
  for (size_t i = 0; i < tokens.size();) {
    if (!tokens[i].is_content() || !tokens[i].selected) {
      ++i;
      continue;
    }
    auto it = longest.find(i);
    if (it != longest.end()) {
      stream.push_back(*keys[{i, it->second}]);
      i = it->second;
    } else {
      stream.push_back(tokens[i].analysis().stem);
      ++i;
    }
  }
  return stream;
}

AnnotatedSentence AnnotateSentence(const Sentence &sentence, const Lexicon &lexicon) {
  AnnotatedSentence result;
  result.parse = ParseSentence(sentence, lexicon);
  for (TermCandidate &c : ExtractCandidates(result.parse)) {
    if (IsValidTerm(c.term, lexicon)) result.terms.push_back(std::move(c));
  }
  result.stream = EmitTermStream(result.parse, result.terms);
  return result;
}

AnnotatedCorpus AnnotateCorpus(const Corpus &corpus, const Lexicon &lexicon,
                               const std::function<void(double)> &progress) {
  AnnotatedCorpus out;
  out.id = corpus.id;
  out.corpus_id = corpus.id;
  auto is_abbreviation = [&](std::string_view w) { return lexicon.IsAbbreviation(w); };

  struct Count {
    size_t frequency = 0;
    PartOfSpeech pos = PartOfSpeech::kOther;
  };
  std::map<std::string, Count> counts;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    for (const Sentence &s : SplitDocument(corpus.documents[d], is_abbreviation)) {
      AnnotatedSentence a = AnnotateSentence(s, lexicon);
      // Term keys enter the vocabulary even when a longer term covers them.
      for (const TermCandidate &c : a.terms) {
        counts.try_emplace(c.term.key, Count{0, c.term.words[c.term.head].pos});
      }
      size_t next = 0;
      for (const std::string &key : a.stream) {
        auto [it, inserted] = counts.try_emplace(key);
        ++it->second.frequency;
        if (!inserted) continue;
        // A plain word: take the part of speech of the token it came from.
        for (; next < a.parse.tokens.size(); ++next) {
          const AnalyzedToken &t = a.parse.tokens[next];
          if (t.is_content() && t.selected && t.analysis().stem == key) {
            it->second.pos = t.analysis().pos;
            break;
          }
        }
      }
      out.sentences.push_back(std::move(a));
    }
    if (progress) progress(static_cast<double>(d + 1) / corpus.documents.size());
  }
  for (const auto &[key, c] : counts) out.vocabulary.push_back({key, c.frequency, c.pos});
  return out;
}

namespace {

json SentenceJson(const AnnotatedSentence &a) {
  const SentenceParse &p = a.parse;
  json tokens = json::array();
  for (const AnalyzedToken &t : p.tokens) {
    json analyses = json::array();
    for (const MorphAnalysis &m : t.candidates) {
      analyses.push_back({{"stem", m.stem},
                          {"inflexion", m.inflexion},
                          {"pos", PosName(m.pos)},
                          {"gram", m.gram_attrs},
                          {"sem", m.sem_attrs},
                          {"fallback", m.fallback}});
    }
    tokens.push_back({{"surface", t.token.surface},
                      {"start", t.token.span.begin},
                      {"end", t.token.span.end},
                      {"kind", TokenKindName(t.token.kind)},
                      {"function_word", t.function_word},
                      {"stopword", t.stopword},
                      {"analyses", analyses},
                      {"selected", t.selected ? json(*t.selected) : json(nullptr)}});
  }
  json edges = json::array();
  for (const RelationEdge &e : p.edges()) {
    edges.push_back({{"head", e.head},
                     {"dep", e.dependent},
                     {"relation", e.relation_name},
                     {"correlator", e.correlator_id}});
  }
  json terms = json::array();
  for (const TermCandidate &c : a.terms) {
    terms.push_back({{"key", c.term.key},
                     {"kind", TermKindName(c.term.kind)},
                     {"begin", c.occurrence.begin},
                     {"end", c.occurrence.end},
                     {"word_count", c.term.word_count()}});
  }
  return {{"document", p.document_id}, {"index", p.sentence_index},
          {"tokens", tokens},          {"edges", edges},
          {"syntagma_count", p.unlinked_count}, {"terms", terms}};
}

void WriteText(const fs::path &file, const std::string &text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
}

}  // namespace

void SaveAnnotated(const AnnotatedCorpus &annotated, const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());

  std::string sentences;
  std::string stream;
  std::map<std::string, std::pair<const Term *, size_t>> terms;
  for (const AnnotatedSentence &a : annotated.sentences) {
    sentences += SentenceJson(a).dump() + "\n";
    for (size_t i = 0; i < a.stream.size(); ++i) {
      if (i > 0) stream += ' ';
      stream += a.stream[i];
    }
    stream += '\n';
    for (const TermCandidate &c : a.terms) {
      auto &entry = terms[c.term.key];
      entry.first = &c.term;
      ++entry.second;
    }
  }
  std::string vocab;
  for (const VocabEntry &v : annotated.vocabulary) {
    vocab += v.key + "\t" + std::to_string(v.frequency) + "\t" + std::string(PosName(v.head_pos)) +
             "\n";
  }
  std::string term_table;
  for (const auto &[key, entry] : terms) {
    term_table += key + "\t" + std::string(TermKindName(entry.first->kind)) + "\t" +
                  std::to_string(entry.first->word_count()) + "\t" +
                  std::to_string(entry.second) + "\n";
  }
  size_t edge_count = 0;
  for (const AnnotatedSentence &a : annotated.sentences) edge_count += a.parse.edges().size();
  json meta = {{"id", annotated.id},
               {"corpus_id", annotated.corpus_id},
               {"created_at", NowIso8601()},
               {"sentence_count", annotated.sentences.size()},
               {"edge_count", edge_count},
               {"term_count", terms.size()},
               {"vocabulary_size", annotated.vocabulary.size()}};

  WriteText(dir / "sentences.jsonl", sentences);
  WriteText(dir / "stream.txt", stream);
  WriteText(dir / "vocab.tsv", vocab);
  WriteText(dir / "terms.tsv", term_table);
  WriteText(dir / "meta.json", meta.dump(2) + "\n");
}

std::vector<std::vector<std::string>> LoadTermStream(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::vector<std::vector<std::string>> stream;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::vector<std::string> sentence;
    std::string w;
    while (words >> w) sentence.push_back(w);
    stream.push_back(std::move(sentence));
  }
  return stream;
}

std::vector<VocabEntry> LoadVocabulary(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::vector<VocabEntry> vocab;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    VocabEntry e;
    std::string pos;
    if (!std::getline(fields, e.key, '\t') || !(fields >> e.frequency)) {
      throw Error(ErrorKind::kParse, file.string() + ":" + std::to_string(number) +
                                         ": expected key<TAB>frequency<TAB>pos");
    }
    fields >> pos;
    e.head_pos = ParsePos(pos).value_or(PartOfSpeech::kOther);
    vocab.push_back(std::move(e));
  }
  return vocab;
}

}  // namespace termspace
