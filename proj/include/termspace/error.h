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

#ifndef TERMSPACE_ERROR_H_
#define TERMSPACE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace termspace {

// Error categories shared by the library, the CLI and the HTTP service.
enum class ErrorKind {
  kInvalidArgument,  // bad request parameters or configuration
  kParse,            // malformed input file
  kValidation,       // well-formed input violating a data invariant
  kNotFound,         // unknown corpus, model, map, job or document
  kUnknownTerm,      // term missing from a model vocabulary
  kDuplicate,        // identifier already taken
  kConflict,         // operation clashes with work in progress
  kIo,               // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}
  // `code` overrides the default machine-readable code of the kind.
  Error(ErrorKind kind, const std::string &message, std::string code)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  std::string_view code() const;

 private:
  ErrorKind kind_;
  std::string code_;
};

// Thrown for a term missing from a model; carries the offending key.
class UnknownTermError : public Error {
 public:
  explicit UnknownTermError(const std::string &term)
      : Error(ErrorKind::kUnknownTerm, "unknown term: " + term), term_(term) {}

  const std::string &term() const { return term_; }

 private:
  std::string term_;
};

// Stable machine-readable code used in JSON error bodies.
std::string_view ErrorCode(ErrorKind kind);

// Process exit code for the CLI (2 for data errors, 3 for I/O errors).
int ExitCode(ErrorKind kind);

// HTTP status for the service.
int HttpStatus(ErrorKind kind);

}  // namespace termspace

#endif  // TERMSPACE_ERROR_H_
