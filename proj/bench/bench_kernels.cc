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

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ueval/records.h"
#include "ueval/riskmetrics.h"
#include "ueval/scorers.h"
#include "ueval/verification.h"

namespace {

const std::vector<ueval::GenerationRecord>& Corpus() {
  static const std::vector<ueval::GenerationRecord> corpus = [] {
    const auto base = ueval::LoadRecords(std::string(UEVAL_DATA_DIR) + "/qa_records.jsonl");
    std::vector<ueval::GenerationRecord> out;
    for (int copy = 0; copy < 20; ++copy) {
      for (auto r : base) {
        r.id += "_" + std::to_string(copy);
        out.push_back(std::move(r));
      }
    }
    return out;
  }();
  return corpus;
}

std::vector<ueval::scorers::ScorerConfig> AllConfigs() {
  std::vector<ueval::scorers::ScorerConfig> configs;
  for (auto name : ueval::KnownMethods()) configs.push_back(ueval::scorers::ConfigFromName(name));
  return configs;
}

void BM_ScoreAllSerial(benchmark::State& state) {
  const auto configs = AllConfigs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ueval::scorers::serial::ScoreAll(Corpus(), configs));
  }
  state.SetItemsProcessed(state.iterations() * Corpus().size());
}
BENCHMARK(BM_ScoreAllSerial)->Unit(benchmark::kMillisecond);

void BM_ScoreAllParallel(benchmark::State& state) {
  const auto configs = AllConfigs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ueval::scorers::ScoreAll(Corpus(), configs));
  }
  state.SetItemsProcessed(state.iterations() * Corpus().size());
}
BENCHMARK(BM_ScoreAllParallel)->Unit(benchmark::kMillisecond);

void BM_NoiseIdentitySerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ueval::verify::serial::VerifyNoiseIdentity(0.75, 0.2, 2000, 100, 1));
  }
}
BENCHMARK(BM_NoiseIdentitySerial)->Unit(benchmark::kMillisecond);

void BM_NoiseIdentityParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ueval::verify::VerifyNoiseIdentity(0.75, 0.2, 2000, 100, 1));
  }
}
BENCHMARK(BM_NoiseIdentityParallel)->Unit(benchmark::kMillisecond);

struct Instance {
  std::vector<double> scores;
  std::vector<int> labels;
};

Instance RandomInstance(int n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  Instance inst;
  for (int i = 0; i < n; ++i) {
    const int y = i % 2;
    inst.labels.push_back(y);
    inst.scores.push_back(normal(rng) + 0.8 * y);
  }
  return inst;
}

double PairEnumeration(const Instance& inst) {
  double wins = 0.0, pairs = 0.0;
  for (size_t i = 0; i < inst.scores.size(); ++i) {
    if (inst.labels[i] != 1) continue;
    for (size_t j = 0; j < inst.scores.size(); ++j) {
      if (inst.labels[j] != 0) continue;
      wins += inst.scores[i] > inst.scores[j] ? 1.0 : inst.scores[i] == inst.scores[j] ? 0.5 : 0.0;
      pairs += 1.0;
    }
  }
  return wins / pairs;
}

void BM_AurocRank(benchmark::State& state) {
  const Instance inst = RandomInstance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ueval::risk::Auroc(inst.scores, inst.labels));
}
BENCHMARK(BM_AurocRank)->Arg(100)->Arg(1000)->Arg(10000);

void BM_AurocPairEnumeration(benchmark::State& state) {
  const Instance inst = RandomInstance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(PairEnumeration(inst));
}
BENCHMARK(BM_AurocPairEnumeration)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
