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

#include "termspace/lexicon.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "termspace/error.h"
#include "termspace/unicode.h"

namespace termspace {
namespace {

namespace fs = std::filesystem;

struct Row {
  size_t line;
  std::vector<std::string> fields;
};

// Attribute pairs of a correlator as (first word, second word).
std::set<std::pair<std::string, std::string>> OrientedPairs(const CorrelatorEntry &c) {
  if (c.head_position == HeadPosition::kFirst) return c.attr_pairs;
  std::set<std::pair<std::string, std::string>> out;
  for (const auto &[head, dep] : c.attr_pairs) out.emplace(dep, head);
  return out;
}

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void Fail(const fs::path &file, size_t line, const std::string &what) {
  throw Error(ErrorKind::kParse,
              file.string() + ":" + std::to_string(line) + ": " + what);
}

std::string ReadFile(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  size_t bad;
  if (!IsValidUtf8(text, &bad)) {
    throw Error(ErrorKind::kParse, file.string() + ": invalid UTF-8 at byte " +
                                       std::to_string(bad));
  }
  return text;
}

// Reads non-empty, non-comment lines split on tabs.
std::vector<Row> ReadTable(const fs::path &file, size_t columns) {
  std::vector<Row> rows;
  std::istringstream in(ReadFile(file));
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != columns) {
      Fail(file, number, "expected " + std::to_string(columns) +
                             " tab-separated fields, found " +
                             std::to_string(fields.size()));
    }
    for (std::string &f : fields) f = Trim(f);
    rows.push_back({number, std::move(fields)});
  }
  return rows;
}

std::vector<std::string> ReadWordList(const fs::path &file) {
  std::vector<std::string> words;
  std::istringstream in(ReadFile(file));
  std::string line;
  while (std::getline(in, line)) {
    std::string word = Trim(line);
    if (word.empty() || word[0] == '#') continue;
    words.push_back(ToLower(word));
  }
  return words;
}

// "-" and "" both denote an empty set.
AttrSet ParseAttrs(const std::string &field) {
  AttrSet attrs;
  if (field == "-" || field.empty()) return attrs;
  for (const std::string &part : Split(field, ',')) {
    std::string attr = Trim(part);
    if (!attr.empty()) attrs.insert(attr);
  }
  return attrs;
}

std::string ParseInflexion(const std::string &field) {
  return field == "-" ? std::string() : ToLower(field);
}

}  // namespace

std::string_view PosName(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun: return "noun";
    case PartOfSpeech::kVerb: return "verb";
    case PartOfSpeech::kAdjective: return "adjective";
    case PartOfSpeech::kAdverb: return "adverb";
    case PartOfSpeech::kAbbreviation: return "abbreviation";
    case PartOfSpeech::kOther: return "other";
  }
  return "other";
}

std::optional<PartOfSpeech> ParsePos(std::string_view name) {
  for (PartOfSpeech pos :
       {PartOfSpeech::kNoun, PartOfSpeech::kVerb, PartOfSpeech::kAdjective,
        PartOfSpeech::kAdverb, PartOfSpeech::kAbbreviation, PartOfSpeech::kOther}) {
    if (PosName(pos) == name) return pos;
  }
  return std::nullopt;
}

std::string ToString(const DeterminantKey &key) {
  std::string s = "(\"" + key.first_inflexion + "\", [";
  for (size_t i = 0; i < key.function_words.size(); ++i) {
    if (i > 0) s += ", ";
    s += key.function_words[i];
  }
  s += "], \"" + key.second_inflexion + "\")";
  return s;
}

LexiconPaths LexiconPaths::FromDirectory(const fs::path &dir) {
  LexiconPaths p;
  p.stems = dir / "stems.tsv";
  p.inflexions = dir / "inflexions.tsv";
  p.determinants = dir / "determinants.tsv";
  p.correlators = dir / "correlators.tsv";
  p.function_words = dir / "function_words.txt";
  p.stopwords = dir / "stopwords.txt";
  p.abbreviations = dir / "abbreviations.txt";
  return p;
}

std::vector<const StemEntry *> Lexicon::FindStems(std::string_view stem) const {
  std::vector<const StemEntry *> result;
  auto [begin, end] = stem_index_.equal_range(std::string(stem));
  std::vector<size_t> positions;
  for (auto it = begin; it != end; ++it) positions.push_back(it->second);
  std::sort(positions.begin(), positions.end());
  for (size_t i : positions) result.push_back(&stems_[i]);
  return result;
}

std::vector<const InflexionEntry *> Lexicon::FindInflexions(std::string_view form) const {
  std::vector<const InflexionEntry *> result;
  auto [begin, end] = inflexion_index_.equal_range(std::string(form));
  std::vector<size_t> positions;
  for (auto it = begin; it != end; ++it) positions.push_back(it->second);
  std::sort(positions.begin(), positions.end());
  for (size_t i : positions) result.push_back(&inflexions_[i]);
  return result;
}

const CorrelatorEntry *Lexicon::FindCorrelator(std::string_view id) const {
  auto it = correlator_index_.find(std::string(id));
  return it == correlator_index_.end() ? nullptr : &correlators_[it->second];
}

std::span<const std::string> Lexicon::LookupDeterminant(const DeterminantKey &key) const {
  auto it = determinants_.find(key);
  if (it == determinants_.end()) return {};
  return it->second;
}

namespace {

bool Matches(const CorrelatorEntry &c, const AttrSet &first, const AttrSet &second) {
  const AttrSet &head = c.head_position == HeadPosition::kFirst ? first : second;
  const AttrSet &dep = c.head_position == HeadPosition::kFirst ? second : first;
  for (const auto &[h, d] : c.attr_pairs) {
    if (head.count(h) > 0 && dep.count(d) > 0) return true;
  }
  return false;
}

}  // namespace

std::optional<CorrelatorMatch> Lexicon::MatchCorrelator(std::span<const std::string> ids,
                                                        const AttrSet &first_attrs,
                                                        const AttrSet &second_attrs) const {
  for (const std::string &id : ids) {
    const CorrelatorEntry *c = FindCorrelator(id);
    if (c != nullptr && Matches(*c, first_attrs, second_attrs)) {
      return CorrelatorMatch{c->relation_name, c->id, c->head_position};
    }
  }
  return std::nullopt;
}

std::vector<CorrelatorMatch> Lexicon::MatchCorrelators(std::span<const std::string> ids,
                                                       const AttrSet &first_attrs,
                                                       const AttrSet &second_attrs) const {
  std::vector<CorrelatorMatch> result;
  for (const std::string &id : ids) {
    const CorrelatorEntry *c = FindCorrelator(id);
    if (c != nullptr && Matches(*c, first_attrs, second_attrs)) {
      result.push_back({c->relation_name, c->id, c->head_position});
    }
  }
  return result;
}

bool Lexicon::IsFunctionWord(std::string_view word) const {
  return function_word_set_.count(std::string(word)) > 0;
}

bool Lexicon::IsStopword(std::string_view word) const {
  return stopword_set_.count(std::string(word)) > 0;
}

bool Lexicon::IsAbbreviation(std::string_view word) const {
  return abbreviation_set_.count(std::string(word)) > 0;
}

bool Lexicon::operator==(const Lexicon &other) const {
  return stems_ == other.stems_ && inflexions_ == other.inflexions_ &&
         correlators_ == other.correlators_ && determinants_ == other.determinants_ &&
         function_words_ == other.function_words_ && stopwords_ == other.stopwords_ &&
         abbreviations_ == other.abbreviations_;
}

void Lexicon::BuildIndexes() {
  for (size_t i = 0; i < stems_.size(); ++i) stem_index_.emplace(stems_[i].stem, i);
  for (size_t i = 0; i < inflexions_.size(); ++i) {
    inflexion_index_.emplace(inflexions_[i].form, i);
  }
  for (size_t i = 0; i < correlators_.size(); ++i) {
    correlator_index_.emplace(correlators_[i].id, i);
  }
  function_word_set_.insert(function_words_.begin(), function_words_.end());
  stopword_set_.insert(stopwords_.begin(), stopwords_.end());
  abbreviation_set_.insert(abbreviations_.begin(), abbreviations_.end());
}

Lexicon LoadLexicon(const LexiconPaths &paths) {
  Lexicon lex;

  std::set<std::pair<std::string, PartOfSpeech>> seen_stems;
  for (const Row &row : ReadTable(paths.stems, 4)) {
    StemEntry e;
    e.stem = ToLower(row.fields[0]);
    if (e.stem.empty()) Fail(paths.stems, row.line, "empty stem");
    auto pos = ParsePos(row.fields[1]);
    if (!pos) Fail(paths.stems, row.line, "unknown part of speech '" + row.fields[1] + "'");
    e.pos = *pos;
    e.gram_attrs = ParseAttrs(row.fields[2]);
    e.sem_attrs = ParseAttrs(row.fields[3]);
    if (!seen_stems.emplace(e.stem, e.pos).second) {
      Fail(paths.stems, row.line, "duplicate stem '" + e.stem + "' with pos " +
                                      std::string(PosName(e.pos)));
    }
    lex.stems_.push_back(std::move(e));
  }

  std::set<std::string> seen_forms;
  for (const Row &row : ReadTable(paths.inflexions, 2)) {
    InflexionEntry e;
    e.form = ParseInflexion(row.fields[0]);
    e.gram_attrs = ParseAttrs(row.fields[1]);
    if (!seen_forms.insert(e.form).second) {
      Fail(paths.inflexions, row.line, "duplicate inflexion '" + row.fields[0] + "'");
    }
    lex.inflexions_.push_back(std::move(e));
  }

  std::set<std::string> seen_ids;
  for (const Row &row : ReadTable(paths.correlators, 4)) {
    CorrelatorEntry e;
    e.id = row.fields[0];
    e.relation_name = row.fields[1];
    if (e.id.empty() || e.relation_name.empty()) {
      Fail(paths.correlators, row.line, "empty correlator id or relation name");
    }
    if (row.fields[2] == "first") {
      e.head_position = HeadPosition::kFirst;
    } else if (row.fields[2] == "second") {
      e.head_position = HeadPosition::kSecond;
    } else {
      Fail(paths.correlators, row.line,
           "head position must be 'first' or 'second', got '" + row.fields[2] + "'");
    }
    for (const std::string &pair : Split(row.fields[3], ';')) {
      std::vector<std::string> hd = Split(Trim(pair), ':');
      if (hd.size() != 2 || Trim(hd[0]).empty() || Trim(hd[1]).empty()) {
        Fail(paths.correlators, row.line, "bad attribute pair '" + pair + "'");
      }
      e.attr_pairs.emplace(Trim(hd[0]), Trim(hd[1]));
    }
    if (!seen_ids.insert(e.id).second) {
      Fail(paths.correlators, row.line, "duplicate correlator id '" + e.id + "'");
    }
    lex.correlators_.push_back(std::move(e));
  }

  // Determinants need correlators to be indexed for validation.
  lex.BuildIndexes();

  for (const Row &row : ReadTable(paths.determinants, 4)) {
    DeterminantKey key;
    key.first_inflexion = ParseInflexion(row.fields[0]);
    key.second_inflexion = ParseInflexion(row.fields[2]);
    if (row.fields[1] != "-") {
      std::istringstream words(row.fields[1]);
      std::string w;
      while (words >> w) key.function_words.push_back(ToLower(w));
    }
    std::vector<std::string> ids;
    for (const std::string &id : Split(row.fields[3], ',')) {
      std::string trimmed = Trim(id);
      if (trimmed.empty()) continue;
      if (lex.FindCorrelator(trimmed) == nullptr) {
        throw Error(ErrorKind::kValidation,
                    paths.determinants.string() + ":" + std::to_string(row.line) +
                        ": determinant " + ToString(key) +
                        " references unknown correlator '" + trimmed + "'");
      }
      ids.push_back(trimmed);
    }
    if (ids.empty()) Fail(paths.determinants, row.line, "no correlator ids");
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = i + 1; j < ids.size(); ++j) {
        if (ids[i] == ids[j]) {
          Fail(paths.determinants, row.line, "correlator '" + ids[i] + "' listed twice");
        }
        auto a = OrientedPairs(*lex.FindCorrelator(ids[i]));
        for (const auto &p : OrientedPairs(*lex.FindCorrelator(ids[j]))) {
          if (a.count(p) > 0) {
            throw Error(ErrorKind::kValidation,
                        paths.determinants.string() + ":" + std::to_string(row.line) +
                            ": determinant " + ToString(key) + " lists correlators " +
                            ids[i] + " and " + ids[j] + " that both match a word pair (" +
                            p.first + ", " + p.second + ")");
          }
        }
      }
    }
    if (!lex.determinants_.emplace(key, std::move(ids)).second) {
      Fail(paths.determinants, row.line, "duplicate determinant " + ToString(key));
    }
  }

  lex.function_words_ = ReadWordList(paths.function_words);
  lex.stopwords_ = ReadWordList(paths.stopwords);
  lex.abbreviations_ = ReadWordList(paths.abbreviations);
  lex.function_word_set_.insert(lex.function_words_.begin(), lex.function_words_.end());
  lex.stopword_set_.insert(lex.stopwords_.begin(), lex.stopwords_.end());
  lex.abbreviation_set_.insert(lex.abbreviations_.begin(), lex.abbreviations_.end());
  return lex;
}

Lexicon LoadLexicon(const fs::path &dir) {
  return LoadLexicon(LexiconPaths::FromDirectory(dir));
}

}  // namespace termspace
