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

#include "ueval/table.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "test_util.h"
#include "ueval/errors.h"

namespace ueval {
namespace {

using testing_util::TempDir;

TEST(TableTest, WriteThenReadRoundTrips) {
  TempDir dir;
  Table t;
  t.header = {"record_id", "method", "score", "n_samples_used"};
  t.rows = {{"a", "g_nll", "1.5", "0"},
            {"b,with comma", "perplexity", "2", "0"},
            {"c \"quoted\"", "p_true", "0.25", "0"}};
  WriteTable(t, dir / "t.csv");
  EXPECT_EQ(ReadFile(dir / "t.csv").find('\n') != std::string::npos, true);
  EXPECT_EQ(ReadTable(dir / "t.csv"), t);
}

TEST(TableTest, ThreeRowsGiveFourLines) {
  Table t;
  t.header = {"x"};
  t.rows = {{"1"}, {"2"}, {"3"}};
  const std::string text = FormatTable(t);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

TEST(TableTest, EmptyRowsWriteHeaderOnly) {
  Table t;
  t.header = {"method", "value"};
  EXPECT_EQ(FormatTable(t), "method,value\n");
  EXPECT_EQ(ParseTable(FormatTable(t)), t);
}

TEST(TableTest, RaggedRowIsParseError) {
  try {
    ParseTable("a,b\n1\n");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
  }
}

TEST(TableTest, UnwritablePathIsIoError) {
  try {
    WriteTable(Table{{"a"}, {}}, "/nonexistent_dir_for_ueval/x.csv");
    FAIL() << "expected an I/O error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_EQ(ExitCodeFor(e.kind()), 2);
  }
}

TEST(TableTest, DoublesRoundTripExactly) {
  for (double v : {0.1, 1.0 / 3.0, -6.907755278982137, 1e-300, 12345.678}) {
    EXPECT_EQ(ParseDouble(FormatDouble(v), "test"), v);
  }
  EXPECT_THROW(ParseDouble("abc", "test"), Error);
}

TEST(TableTest, SplitAndJoin) {
  EXPECT_EQ(SplitList("qa|it", '|'), (std::vector<std::string>{"qa", "it"}));
  EXPECT_EQ(JoinList({"a", "b", "c"}, "; "), "a; b; c");
}

}  // namespace
}  // namespace ueval
