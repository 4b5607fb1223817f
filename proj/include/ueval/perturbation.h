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

#ifndef UEVAL_PERTURBATION_H_
#define UEVAL_PERTURBATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/records.h"

namespace ueval::perturb {

// Default strength grid for perturbation experiments.
inline const std::vector<double> kDefaultStrengths = {0.0, 0.25, 0.5, 0.75, 1.0};

// Splits on whitespace, selects floor(strength * W) word positions uniformly
// without replacement and permutes the selected words uniformly among them.
// Output words are joined by single spaces.
std::string ShuffleWords(std::string_view text, double strength, uint64_t seed);

// Seed used for one strength of a grid: seed XOR a hash of the strength.
uint64_t StrengthSeed(uint64_t seed, double strength);

// "<base>#p=<strength>".
std::string PerturbedId(std::string_view base_id, double strength);
// Inverse of PerturbedId; ids without the suffix map to themselves.
std::string BaseId(std::string_view id);

// One derived record per strength with a shuffled context, the strength set
// and answer / samples cleared. Raises a requirement error when the record
// has no context.
std::vector<GenerationRecord> GenerateGrid(const GenerationRecord& record,
                                           std::span<const double> strengths,
                                           uint64_t seed);

}  // namespace ueval::perturb

#endif  // UEVAL_PERTURBATION_H_
