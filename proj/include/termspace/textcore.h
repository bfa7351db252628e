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

#ifndef TERMSPACE_TEXTCORE_H_
#define TERMSPACE_TEXTCORE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace termspace {

enum class TokenKind { kWord, kNumber, kPunct, kSymbol };

std::string_view TokenKindName(TokenKind kind);

// Half-open byte interval [begin, end) into the UTF-8 document text.
struct Span {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const Span &) const = default;
};

struct Token {
  std::string surface;
  Span span;
  TokenKind kind = TokenKind::kWord;

  bool operator==(const Token &) const = default;
};

struct Sentence {
  std::string document_id;
  size_t index = 0;
  std::vector<Token> tokens;
};

struct Document {
  std::string id;
  std::string source;  // original path or "inline"
  std::string text;
};

struct Corpus {
  std::string id;
  std::string created_at;  // ISO 8601, UTC
  std::vector<Document> documents;
};

// Splits text into word, number, punctuation and symbol tokens. Words are
// runs of letters that may contain single hyphens or apostrophes between
// letters. Whitespace separates tokens and is not reported.
std::vector<Token> Tokenize(std::string_view text);

// Groups tokens into sentences ending at '.', '!' or '?' runs. A period
// directly after a word listed in `abbreviations` (compared lowercased)
// does not end a sentence. Trailing tokens form a final sentence.
std::vector<std::vector<Token>> SplitSentences(
    const std::vector<Token> &tokens,
    const std::function<bool(std::string_view)> &is_abbreviation);

std::vector<Sentence> SplitDocument(
    const Document &doc, const std::function<bool(std::string_view)> &is_abbreviation);

// On-disk corpus store. Each corpus lives in <root>/<id>/ with a
// manifest.json and one UTF-8 file per document under docs/.
class CorpusStore {
 public:
  explicit CorpusStore(std::filesystem::path root) : root_(std::move(root)) {}

  // Creates a corpus from files. Document ids are the file stems, made
  // unique with a numeric suffix. Throws kInvalidArgument for an empty
  // file list or bad id, kDuplicate if the id exists, kIo for unreadable
  // files and kValidation for invalid UTF-8.
  Corpus Ingest(const std::string &corpus_id,
                const std::vector<std::filesystem::path> &files) const;

  // Same, for documents already in memory.
  Corpus Create(const std::string &corpus_id, std::vector<Document> documents) const;

  Corpus Load(const std::string &corpus_id) const;
  bool Exists(const std::string &corpus_id) const;
  std::vector<std::string> List() const;

  // Raw manifest JSON text.
  std::string Manifest(const std::string &corpus_id) const;
  void SetStatus(const std::string &corpus_id, const std::string &status) const;

  const std::filesystem::path &root() const { return root_; }

 private:
  std::filesystem::path root_;
};

// Identifiers used as directory names: [A-Za-z0-9_.-], not starting with '.'.
bool IsValidId(std::string_view id);
void CheckId(std::string_view id, std::string_view what);

// Current time as ISO 8601 UTC with seconds precision.
std::string NowIso8601();

}  // namespace termspace

#endif  // TERMSPACE_TEXTCORE_H_
