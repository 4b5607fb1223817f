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

#ifndef UEVAL_ERRORS_H_
#define UEVAL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ueval {

enum class ErrorKind {
  kValidation,
  kParse,
  kIo,
  kConfiguration,
  kDegenerateInput,
  kShape,
  kRequirement,
  kUndefinedMetric,
  kNumerical,
  kMissingData,
};

std::string_view ErrorKindName(ErrorKind kind);

// All failures raised by the library carry a kind so the CLI can map them to
// exit codes (I/O -> 2, everything else -> 1).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& message);

int ExitCodeFor(ErrorKind kind);

// Non-fatal findings (skipped records, unknown fields, excluded nulls).
struct Diagnostics {
  std::vector<std::string> warnings;

  void Warn(std::string message) { warnings.push_back(std::move(message)); }
  void Append(const Diagnostics& other) {
    warnings.insert(warnings.end(), other.warnings.begin(),
                    other.warnings.end());
  }
};

}  // namespace ueval

#endif  // UEVAL_ERRORS_H_
