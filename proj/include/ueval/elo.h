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

#ifndef UEVAL_ELO_H_
#define UEVAL_ELO_H_

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueval/records.h"
#include "ueval/table.h"

namespace ueval::elo {

struct EloParams {
  double initial = 1000.0;
  double k = 2.0;
  double s = 400.0;
  int64_t steps = 100000;
  int window = 1000;       // snapshots kept for the final statistics
  int trace_block = 1000;  // steps per convergence-trace entry
};

void ValidateParams(const EloParams& params);

// Probability that A beats B: 1 / (1 + 10^((rB - rA) / s)).
double ExpectedScore(double r_a, double r_b, double s);

enum class Outcome { kAWins, kBWins, kTie };

class EloState {
 public:
  EloState(std::vector<std::string> methods, const EloParams& params, uint64_t seed);

  // Applies one game and records a rating snapshot.
  void PlayGame(std::string_view a, std::string_view b, Outcome outcome);
  void PlayGame(size_t a, size_t b, double score_a);

  const std::vector<std::string>& methods() const { return methods_; }
  const std::vector<double>& ratings() const { return ratings_; }
  double Rating(std::string_view method) const;
  int64_t step() const { return step_; }
  uint64_t seed() const { return seed_; }
  std::mt19937_64& rng() { return rng_; }

  // Number of snapshots currently held (at most params.window).
  size_t history_size() const { return history_filled_; }
  // Mean and population variance of each method's rating over the held
  // snapshots.
  std::vector<std::pair<double, double>> WindowStats() const;

 private:
  size_t IndexOf(std::string_view method) const;

  std::vector<std::string> methods_;
  std::vector<double> ratings_;
  EloParams params_;
  uint64_t seed_;
  std::mt19937_64 rng_;
  int64_t step_ = 0;
  std::vector<std::vector<double>> history_;  // ring buffer
  size_t history_next_ = 0;
  size_t history_filled_ = 0;
};

// A partition is "all" or a '+'-joined list of tags; a result is kept when
// its partition_tags contain every listed tag.
std::set<std::string> ParsePartition(std::string_view partition);
std::vector<ExperimentResult> FilterResults(std::span<const ExperimentResult> results,
                                            std::string_view partition);

struct MethodRating {
  std::string method;
  double mean = 0.0;
  double var = 0.0;

  bool operator==(const MethodRating&) const = default;
};

struct EloRun {
  std::string partition;
  std::vector<MethodRating> ratings;  // first-appearance order
  std::vector<double> final_ratings;
  std::vector<double> trace;  // max |rating change| per trace block
  std::vector<int64_t> trace_steps;  // step count at the end of each block
  double rating_sum = 0.0;
};

// Plays `params.steps` games: each step picks a (dataset, model, indicator)
// cell uniformly among cells with at least two methods, then two distinct
// methods of that cell uniformly; the higher value wins and exact ties score
// 1/2 each.
EloRun RunRating(std::span<const ExperimentResult> results, std::string_view partition,
                 const EloParams& params, uint64_t seed);

// Independent runs, one per partition, evaluated in parallel.
std::vector<EloRun> RunPartitions(std::span<const ExperimentResult> results,
                                  std::span<const std::string> partitions,
                                  const EloParams& params, uint64_t seed);

// method,partition,elo_mean,elo_var
Table RatingsToTable(std::span<const EloRun> runs);
// partition,step,max_abs_change
Table TraceToTable(std::span<const EloRun> runs);

}  // namespace ueval::elo

#endif  // UEVAL_ELO_H_
