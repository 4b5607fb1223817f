// Copyright 2026 The UEval Authors.
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

#ifndef UEVAL_CLI_H_
#define UEVAL_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ueval::cli {

// Runs the `ueval` command line. `args` excludes the program name. Tables
// without an --out path are written to `out`; warnings and errors go to
// `err`. Returns 0 on success, 1 on usage or validation errors and 2 on I/O
// errors.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int Main(int argc, char** argv);

}  // namespace ueval::cli

#endif  // UEVAL_CLI_H_
