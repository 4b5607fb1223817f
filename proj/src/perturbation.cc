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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace ueval::perturb {
namespace {

constexpr std::string_view kSuffix = "#p=";

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void CheckStrength(double strength) {
  if (!(strength >= 0.0 && strength <= 1.0)) {
    Fail(ErrorKind::kConfiguration, "perturbation strength must lie in [0,1]");
  }
}

}  // namespace

std::string ShuffleWords(std::string_view text, double strength, uint64_t seed) {
  CheckStrength(strength);
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(std::move(w));

  const size_t count = static_cast<size_t>(
      std::floor(strength * static_cast<double>(words.size()) + 1e-9));
  if (count >= 2) {
    std::mt19937_64 rng(seed);
    std::vector<size_t> positions(words.size());
    std::iota(positions.begin(), positions.end(), 0);
    std::vector<size_t> selected;
    std::sample(positions.begin(), positions.end(), std::back_inserter(selected), count, rng);
    std::vector<std::string> picked;
    for (size_t p : selected) picked.push_back(words[p]);
    std::shuffle(picked.begin(), picked.end(), rng);
    for (size_t i = 0; i < selected.size(); ++i) words[selected[i]] = std::move(picked[i]);
  }
  return JoinList(words, " ");
}

uint64_t StrengthSeed(uint64_t seed, double strength) {
  return seed ^ SplitMix64(std::bit_cast<uint64_t>(strength));
}

std::string PerturbedId(std::string_view base_id, double strength) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", strength);
  return std::string(base_id) + std::string(kSuffix) + buf;
}

std::string BaseId(std::string_view id) {
  const size_t pos = id.rfind(kSuffix);
  return std::string(pos == std::string_view::npos ? id : id.substr(0, pos));
}

std::vector<GenerationRecord> GenerateGrid(const GenerationRecord& record,
                                           std::span<const double> strengths,
                                           uint64_t seed) {
  if (!record.context) {
    Fail(ErrorKind::kRequirement, "record '" + record.id + "' has no context to perturb");
  }
  if (std::find(strengths.begin(), strengths.end(), 0.0) == strengths.end()) {
    Fail(ErrorKind::kConfiguration, "perturbation grid must include strength 0");
  }
  std::set<std::string> ids;
  std::vector<GenerationRecord> out;
  for (double s : strengths) {
    CheckStrength(s);
    GenerationRecord derived = record;
    derived.id = PerturbedId(record.id, s);
    if (!ids.insert(derived.id).second) {
      Fail(ErrorKind::kConfiguration, "duplicate perturbation strength " + derived.id);
    }
    if (s > 0.0) derived.context = ShuffleWords(*record.context, s, StrengthSeed(seed, s));
    derived.perturbation_strength = s;
    derived.answer = AnswerSequence{};
    derived.samples.clear();
    derived.similarity = SimilarityData{};
    derived.p_true_logprob.reset();
    out.push_back(std::move(derived));
  }
  return out;
}

}  // namespace ueval::perturb
