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

#include "ueval/perturbation.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_util.h"
#include "ueval/correctness.h"

namespace ueval::perturb {
namespace {

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

TEST(ShuffleWordsTest, StrengthZeroNormalizesWhitespaceOnly) {
  EXPECT_EQ(ShuffleWords("  the  cat\tsat ", 0.0, 1), "the cat sat");
  EXPECT_EQ(ShuffleWords("", 1.0, 1), "");
}

TEST(ShuffleWordsTest, FullStrengthIsAPermutation) {
  std::set<std::string> all;
  std::vector<std::string> w{"a", "b", "c"};
  do {
    all.insert(w[0] + " " + w[1] + " " + w[2]);
  } while (std::next_permutation(w.begin(), w.end()));
  std::set<std::string> seen;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const std::string out = ShuffleWords("a b c", 1.0, seed);
    EXPECT_TRUE(all.count(out)) << out;
    EXPECT_EQ(out, ShuffleWords("a b c", 1.0, seed));
    seen.insert(out);
  }
  EXPECT_EQ(seen, all);
}

TEST(ShuffleWordsTest, PreservesMultisetAndBoundsDisplacement) {
  const std::string text =
      "once upon a time there was a small village near a river and the river was wide";
  const auto in = Words(text);
  for (double s : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const auto out = Words(ShuffleWords(text, s, seed));
      ASSERT_EQ(out.size(), in.size());
      auto a = in, b = out;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
      size_t moved = 0;
      for (size_t i = 0; i < in.size(); ++i) moved += in[i] != out[i];
      EXPECT_LE(moved, static_cast<size_t>(s * in.size() + 1e-9));
    }
  }
}

TEST(ShuffleWordsTest, RejectsOutOfRangeStrength) {
  EXPECT_THROW(ShuffleWords("a b", -0.1, 1), Error);
  EXPECT_THROW(ShuffleWords("a b", 1.1, 1), Error);
}

TEST(IdsTest, RoundTrip) {
  EXPECT_EQ(PerturbedId("story7", 0.25), "story7#p=0.25");
  EXPECT_EQ(BaseId("story7#p=0.25"), "story7");
  EXPECT_EQ(BaseId("story7"), "story7");
  EXPECT_NE(StrengthSeed(1, 0.25), StrengthSeed(1, 0.5));
  EXPECT_EQ(StrengthSeed(1, 0.25), StrengthSeed(1, 0.25));
}

GenerationRecord WithContext() {
  auto r = testing_util::Record("s1");
  r.context = "the fox jumped over the lazy dog while   the farmer slept";
  r.samples = {testing_util::Sample({-0.1}, 0)};
  r.p_true_logprob = -0.2;
  return r;
}

TEST(GenerateGridTest, Examples) {
  const auto r = WithContext();
  const std::vector<double> strengths{0.0, 0.5, 1.0};
  const auto grid = GenerateGrid(r, strengths, 11);
  ASSERT_EQ(grid.size(), 3u);
  EXPECT_EQ(grid[0].context, r.context);
  std::set<std::string> ids;
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto& g = grid[i];
    ids.insert(g.id);
    EXPECT_EQ(g.id, PerturbedId("s1", strengths[i]));
    EXPECT_EQ(g.perturbation_strength, strengths[i]);
    EXPECT_EQ(g.question, r.question);
    EXPECT_EQ(g.references, r.references);
    EXPECT_TRUE(g.answer.text.empty());
    EXPECT_TRUE(g.answer.token_logprobs.empty());
    EXPECT_TRUE(g.samples.empty());
    EXPECT_FALSE(g.p_true_logprob.has_value());
    auto a = Words(*g.context), b = Words(*r.context);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    if (strengths[i] > 0) {
      EXPECT_EQ(*g.context, ShuffleWords(*r.context, strengths[i], StrengthSeed(11, strengths[i])));
    }
  }
  EXPECT_EQ(ids.size(), 3u);
  EXPECT_EQ(GenerateGrid(r, strengths, 11), grid);
}

TEST(GenerateGridTest, Errors) {
  auto r = WithContext();
  EXPECT_THROW(GenerateGrid(r, std::vector<double>{0.0, 0.5, 0.5}, 1), Error);
  EXPECT_THROW(GenerateGrid(r, std::vector<double>{0.5, 1.0}, 1), Error);
  r.context.reset();
  try {
    GenerateGrid(r, kDefaultStrengths, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kRequirement);
  }
}

}  // namespace
}  // namespace ueval::perturb
