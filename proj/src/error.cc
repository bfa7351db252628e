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

#include "termspace/error.h"

namespace termspace {

std::string_view ErrorCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "bad_request";
    case ErrorKind::kParse: return "parse_error";
    case ErrorKind::kValidation: return "invalid";
    case ErrorKind::kNotFound: return "not_found";
    case ErrorKind::kUnknownTerm: return "unknown_term";
    case ErrorKind::kDuplicate: return "duplicate_id";
    case ErrorKind::kConflict: return "conflict";
    case ErrorKind::kIo: return "io_error";
  }
  return "error";
}

std::string_view Error::code() const {
  return code_.empty() ? ErrorCode(kind_) : std::string_view(code_);
}

int ExitCode(ErrorKind kind) {
  return kind == ErrorKind::kIo ? 3 : 2;
}

int HttpStatus(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
      return 400;
    case ErrorKind::kNotFound:
    case ErrorKind::kUnknownTerm:
      return 404;
    case ErrorKind::kDuplicate:
    case ErrorKind::kConflict:
      return 409;
    case ErrorKind::kIo:
      return 500;
  }
  return 500;
}

}  // namespace termspace
