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

#include "ueval/errors.h"

namespace ueval {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
      return "validation error";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kIo:
      return "I/O error";
    case ErrorKind::kConfiguration:
      return "configuration error";
    case ErrorKind::kDegenerateInput:
      return "degenerate input";
    case ErrorKind::kShape:
      return "shape error";
    case ErrorKind::kRequirement:
      return "requirement error";
    case ErrorKind::kUndefinedMetric:
      return "undefined metric";
    case ErrorKind::kNumerical:
      return "numerical error";
    case ErrorKind::kMissingData:
      return "missing data";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

int ExitCodeFor(ErrorKind kind) { return kind == ErrorKind::kIo ? 2 : 1; }

}  // namespace ueval
