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

#ifndef TERMSPACE_CLI_H_
#define TERMSPACE_CLI_H_

#include <ostream>

namespace termspace {

// Runs the command line tool. Returns the process exit code: 0 on success,
// 1 on a usage error, 2 on a data or validation error, 3 on an I/O error.
int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace termspace

#endif  // TERMSPACE_CLI_H_
