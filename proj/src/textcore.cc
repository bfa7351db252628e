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

#include "termspace/textcore.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "termspace/error.h"
#include "termspace/unicode.h"

namespace termspace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kNumber: return "number";
    case TokenKind::kPunct: return "punct";
    case TokenKind::kSymbol: return "symbol";
  }
  return "symbol";
}

namespace {

bool IsJoiner(char32_t c) {
  return c == '-' || c == '\'' || c == 0x2019 || c == 0x2010 || c == 0x2011;
}

bool IsTerminal(const Token &t) {
  return t.kind == TokenKind::kPunct &&
         (t.surface == "." || t.surface == "!" || t.surface == "?" ||
          t.surface == "…");
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::vector<CodePoint> cps = DecodeUtf8(text);
  size_t i = 0;
  auto emit = [&](size_t first, size_t last, TokenKind kind) {
    Span span{cps[first].begin, cps[last].end};
    tokens.push_back(
        {std::string(text.substr(span.begin, span.end - span.begin)), span, kind});
  };
  while (i < cps.size()) {
    char32_t c = cps[i].value;
    if (c != kInvalidCodePoint && IsSpace(c)) {
      ++i;
    } else if (IsLetter(c)) {
      size_t j = i + 1;
      while (j < cps.size()) {
        if (IsLetter(cps[j].value)) {
          ++j;
        } else if (IsJoiner(cps[j].value) && j + 1 < cps.size() &&
                   IsLetter(cps[j + 1].value)) {
          j += 2;
        } else {
          break;
        }
      }
      emit(i, j - 1, TokenKind::kWord);
      i = j;
    } else if (IsDigit(c)) {
      size_t j = i + 1;
      while (j < cps.size()) {
        if (IsDigit(cps[j].value)) {
          ++j;
        } else if ((cps[j].value == '.' || cps[j].value == ',') && j + 1 < cps.size() &&
                   IsDigit(cps[j + 1].value)) {
          j += 2;
        } else {
          break;
        }
      }
      emit(i, j - 1, TokenKind::kNumber);
      i = j;
    } else {
      emit(i, i, IsPunctuation(c) ? TokenKind::kPunct : TokenKind::kSymbol);
      ++i;
    }
  }
  return tokens;
}

std::vector<std::vector<Token>> SplitSentences(
    const std::vector<Token> &tokens,
    const std::function<bool(std::string_view)> &is_abbreviation) {
  std::vector<std::vector<Token>> sentences;
  std::vector<Token> current;
  size_t i = 0;
  while (i < tokens.size()) {
    if (!IsTerminal(tokens[i])) {
      current.push_back(tokens[i++]);
      continue;
    }
    bool abbreviation = false;
    if (tokens[i].surface == "." && i > 0) {
      const Token &prev = tokens[i - 1];
      abbreviation = prev.kind == TokenKind::kWord && prev.span.end == tokens[i].span.begin &&
                     is_abbreviation && is_abbreviation(ToLower(prev.surface));
    }
    // Keep the whole run of terminal marks ("?!", "...") together.
    while (i < tokens.size() && IsTerminal(tokens[i])) current.push_back(tokens[i++]);
    if (!abbreviation) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<Sentence> SplitDocument(
    const Document &doc, const std::function<bool(std::string_view)> &is_abbreviation) {
  std::vector<Sentence> result;
  for (auto &tokens : SplitSentences(Tokenize(doc.text), is_abbreviation)) {
    Sentence s;
    s.document_id = doc.id;
    s.index = result.size();
    s.tokens = std::move(tokens);
    result.push_back(std::move(s));
  }
  return result;
}

bool IsValidId(std::string_view id) {
  if (id.empty() || id.size() > 128 || id[0] == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

void CheckId(std::string_view id, std::string_view what) {
  if (!IsValidId(id)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + " id '" + std::string(id) +
                    "' must be 1-128 characters from [A-Za-z0-9_.-] and not start with '.'");
  }
}

std::string NowIso8601() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string ReadBinary(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "error reading " + file.string());
  return ss.str();
}

void WriteBinary(const fs::path &file, std::string_view data) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
}

std::string DocumentId(const std::string &stem, std::set<std::string> *used) {
  std::string base;
  for (char c : stem) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-' || c == '.';
    base.push_back(ok ? c : '_');
  }
  if (base.empty() || base[0] == '.') base = "doc" + base;
  std::string id = base;
  for (int n = 2; used->count(id) > 0; ++n) id = base + "-" + std::to_string(n);
  used->insert(id);
  return id;
}

}  // namespace

Corpus CorpusStore::Ingest(const std::string &corpus_id,
                           const std::vector<fs::path> &files) const {
  CheckId(corpus_id, "corpus");
  if (files.empty()) throw Error(ErrorKind::kInvalidArgument, "no input documents");
  std::vector<Document> docs;
  std::set<std::string> used;
  for (const fs::path &file : files) {
    std::error_code ec;
    if (!fs::is_regular_file(file, ec)) {
      throw Error(ErrorKind::kIo, "cannot read " + file.string() + ": not a regular file");
    }
    Document doc;
    doc.text = ReadBinary(file);
    doc.source = file.string();
    doc.id = DocumentId(file.stem().string(), &used);
    docs.push_back(std::move(doc));
  }
  return Create(corpus_id, std::move(docs));
}

Corpus CorpusStore::Create(const std::string &corpus_id, std::vector<Document> documents) const {
  CheckId(corpus_id, "corpus");
  if (documents.empty()) throw Error(ErrorKind::kInvalidArgument, "no input documents");
  std::set<std::string> ids;
  for (Document &doc : documents) {
    size_t bad;
    if (!IsValidUtf8(doc.text, &bad)) {
      throw Error(ErrorKind::kValidation, "document " + doc.source + " is not valid UTF-8 (byte " +
                                              std::to_string(bad) + ")");
    }
    CheckId(doc.id, "document");
    if (!ids.insert(doc.id).second) {
      throw Error(ErrorKind::kDuplicate, "duplicate document id '" + doc.id + "'");
    }
  }

  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + root_.string() + ": " + ec.message());
  fs::path dir = root_ / corpus_id;
  // create_directory is the lock: only one writer can create a corpus id.
  if (!fs::create_directory(dir, ec)) {
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
    throw Error(ErrorKind::kDuplicate, "corpus '" + corpus_id + "' already exists");
  }

  Corpus corpus;
  corpus.id = corpus_id;
  corpus.created_at = NowIso8601();
  try {
    fs::create_directory(dir / "docs");
    json manifest = {{"id", corpus_id},
                     {"created_at", corpus.created_at},
                     {"status", "not annotated"},
                     {"documents", json::array()}};
    for (Document &doc : documents) {
      WriteBinary(dir / "docs" / (doc.id + ".txt"), doc.text);
      manifest["documents"].push_back(
          {{"id", doc.id}, {"source", doc.source}, {"bytes", doc.text.size()}});
      corpus.documents.push_back(std::move(doc));
    }
    WriteBinary(dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (...) {
    fs::remove_all(dir, ec);
    throw;
  }
  return corpus;
}

Corpus CorpusStore::Load(const std::string &corpus_id) const {
  CheckId(corpus_id, "corpus");
  json manifest;
  try {
    manifest = json::parse(Manifest(corpus_id));
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParse, "corrupt manifest for corpus '" + corpus_id + "': " + e.what());
  }
  Corpus corpus;
  corpus.id = corpus_id;
  corpus.created_at = manifest.value("created_at", "");
  for (const json &d : manifest.at("documents")) {
    Document doc;
    doc.id = d.at("id").get<std::string>();
    doc.source = d.value("source", "");
    doc.text = ReadBinary(root_ / corpus_id / "docs" / (doc.id + ".txt"));
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

bool CorpusStore::Exists(const std::string &corpus_id) const {
  std::error_code ec;
  return IsValidId(corpus_id) && fs::exists(root_ / corpus_id / "manifest.json", ec);
}

std::vector<std::string> CorpusStore::List() const {
  std::vector<std::string> ids;
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) return ids;
  for (const auto &entry : fs::directory_iterator(root_, ec)) {
    std::string id = entry.path().filename().string();
    if (Exists(id)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string CorpusStore::Manifest(const std::string &corpus_id) const {
  if (!Exists(corpus_id)) {
    throw Error(ErrorKind::kNotFound, "corpus '" + corpus_id + "' not found");
  }
  return ReadBinary(root_ / corpus_id / "manifest.json");
}

void CorpusStore::SetStatus(const std::string &corpus_id, const std::string &status) const {
  json manifest = json::parse(Manifest(corpus_id));
  manifest["status"] = status;
  fs::path tmp = root_ / corpus_id / "manifest.json.tmp";
  WriteBinary(tmp, manifest.dump(2) + "\n");
  std::error_code ec;
  fs::rename(tmp, root_ / corpus_id / "manifest.json", ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot update manifest: " + ec.message());
}

}  // namespace termspace
