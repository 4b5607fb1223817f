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

#ifndef UEVAL_TABLE_H_
#define UEVAL_TABLE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ueval {

// A comma-separated table with a single header row. Fields containing commas,
// quotes or newlines are quoted on output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header, if present.
  std::optional<size_t> ColumnIndex(std::string_view name) const;
  // Like ColumnIndex but raises a validation error naming `context`.
  size_t RequireColumn(std::string_view name, std::string_view context) const;

  bool operator==(const Table&) const = default;
};

void WriteTable(const Table& table, const std::filesystem::path& path);
Table ReadTable(const std::filesystem::path& path);

std::string FormatTable(const Table& table);
Table ParseTable(std::string_view text, std::string_view source = "<memory>");

// Shortest text that parses back to the identical double.
std::string FormatDouble(double value);
double ParseDouble(std::string_view text, std::string_view context);

std::vector<std::string> SplitList(std::string_view text, char sep);
std::string JoinList(const std::vector<std::string>& items, std::string_view sep);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace ueval

#endif  // UEVAL_TABLE_H_
