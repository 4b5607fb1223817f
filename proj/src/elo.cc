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

#include "ueval/elo.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "ueval/errors.h"

namespace ueval::elo {
namespace {

struct Cell {
  std::vector<size_t> methods;
  std::vector<double> values;
};

}  // namespace

void ValidateParams(const EloParams& p) {
  if (!(p.k > 0.0)) Fail(ErrorKind::kConfiguration, "elo: K must be > 0");
  if (!(p.s > 0.0)) Fail(ErrorKind::kConfiguration, "elo: s must be > 0");
  if (p.steps < 1) Fail(ErrorKind::kConfiguration, "elo: steps must be >= 1");
  if (p.window < 1) Fail(ErrorKind::kConfiguration, "elo: window must be >= 1");
  if (p.trace_block < 1) Fail(ErrorKind::kConfiguration, "elo: trace block must be >= 1");
}

double ExpectedScore(double r_a, double r_b, double s) {
  if (!(s > 0.0)) Fail(ErrorKind::kConfiguration, "elo: s must be > 0");
  return 1.0 / (1.0 + std::pow(10.0, (r_b - r_a) / s));
}

EloState::EloState(std::vector<std::string> methods, const EloParams& params,
                   uint64_t seed)
    : methods_(std::move(methods)),
      ratings_(methods_.size(), params.initial),
      params_(params),
      seed_(seed),
      rng_(seed),
      history_(static_cast<size_t>(params.window)) {
  ValidateParams(params_);
  std::set<std::string> unique(methods_.begin(), methods_.end());
  if (unique.size() != methods_.size()) {
    Fail(ErrorKind::kValidation, "elo: duplicate method names");
  }
}

size_t EloState::IndexOf(std::string_view method) const {
  auto it = std::find(methods_.begin(), methods_.end(), method);
  if (it == methods_.end()) {
    Fail(ErrorKind::kValidation, "elo: unknown method '" + std::string(method) + "'");
  }
  return static_cast<size_t>(it - methods_.begin());
}

double EloState::Rating(std::string_view method) const { return ratings_[IndexOf(method)]; }

void EloState::PlayGame(std::string_view a, std::string_view b, Outcome outcome) {
  const double score = outcome == Outcome::kAWins ? 1.0 : outcome == Outcome::kBWins ? 0.0 : 0.5;
  PlayGame(IndexOf(a), IndexOf(b), score);
}

void EloState::PlayGame(size_t a, size_t b, double score_a) {
  if (a == b) Fail(ErrorKind::kValidation, "elo: a method cannot play itself");
  if (a >= ratings_.size() || b >= ratings_.size()) {
    Fail(ErrorKind::kValidation, "elo: method index out of range");
  }
  // Applying the same delta with opposite signs keeps the rating sum fixed.
  const double delta = params_.k * (score_a - ExpectedScore(ratings_[a], ratings_[b], params_.s));
  ratings_[a] += delta;
  ratings_[b] -= delta;
  ++step_;
  history_[history_next_] = ratings_;
  history_next_ = (history_next_ + 1) % history_.size();
  history_filled_ = std::min(history_filled_ + 1, history_.size());
}

std::vector<std::pair<double, double>> EloState::WindowStats() const {
  std::vector<std::pair<double, double>> stats(ratings_.size(), {0.0, 0.0});
  if (history_filled_ == 0) {
    for (size_t m = 0; m < ratings_.size(); ++m) stats[m] = {ratings_[m], 0.0};
    return stats;
  }
  const double n = static_cast<double>(history_filled_);
  for (size_t m = 0; m < ratings_.size(); ++m) {
    double sum = 0.0;
    for (size_t h = 0; h < history_filled_; ++h) sum += history_[h][m];
    const double mean = sum / n;
    double ss = 0.0;
    for (size_t h = 0; h < history_filled_; ++h) {
      const double d = history_[h][m] - mean;
      ss += d * d;
    }
    stats[m] = {mean, ss / n};
  }
  return stats;
}

std::set<std::string> ParsePartition(std::string_view partition) {
  std::set<std::string> tags;
  if (partition.empty() || partition == "all") return tags;
  for (auto& tag : SplitList(partition, '+')) {
    if (tag.empty()) Fail(ErrorKind::kConfiguration, "elo: empty tag in partition");
    tags.insert(std::move(tag));
  }
  return tags;
}

std::vector<ExperimentResult> FilterResults(std::span<const ExperimentResult> results,
                                            std::string_view partition) {
  const std::set<std::string> required = ParsePartition(partition);
  std::vector<ExperimentResult> out;
  for (const auto& r : results) {
    if (std::includes(r.partition_tags.begin(), r.partition_tags.end(), required.begin(),
                      required.end())) {
      out.push_back(r);
    }
  }
  return out;
}

EloRun RunRating(std::span<const ExperimentResult> results, std::string_view partition,
                 const EloParams& params, uint64_t seed) {
  ValidateParams(params);
  const std::vector<ExperimentResult> filtered = FilterResults(results, partition);
  if (filtered.empty()) {
    Fail(ErrorKind::kValidation, "elo: no results in partition '" + std::string(partition) + "'");
  }

  std::vector<std::string> methods;
  std::vector<std::tuple<std::string, std::string, Indicator>> cell_keys;
  std::vector<Cell> cells;
  for (const auto& r : filtered) {
    ValidateResult(r);
    auto m_it = std::find(methods.begin(), methods.end(), r.method);
    const size_t m = static_cast<size_t>(m_it - methods.begin());
    if (m_it == methods.end()) methods.push_back(r.method);
    const auto key = std::make_tuple(r.dataset, r.model, r.indicator);
    auto c_it = std::find(cell_keys.begin(), cell_keys.end(), key);
    const size_t c = static_cast<size_t>(c_it - cell_keys.begin());
    if (c_it == cell_keys.end()) {
      cell_keys.push_back(key);
      cells.emplace_back();
    }
    if (std::find(cells[c].methods.begin(), cells[c].methods.end(), m) != cells[c].methods.end()) {
      Fail(ErrorKind::kValidation, "elo: duplicate result for method '" + r.method +
                                       "' in cell " + r.dataset + "/" + r.model + "/" +
                                       std::string(IndicatorName(r.indicator)));
    }
    cells[c].methods.push_back(m);
    cells[c].values.push_back(r.value);
  }
  std::vector<const Cell*> playable;
  for (const auto& cell : cells) {
    if (cell.methods.size() >= 2) playable.push_back(&cell);
  }
  if (playable.empty()) {
    Fail(ErrorKind::kValidation, "elo: no cell in partition '" + std::string(partition) +
                                     "' has two or more methods");
  }

  EloState state(methods, params, seed);
  EloRun run;
  run.partition = std::string(partition);
  std::uniform_int_distribution<size_t> pick_cell(0, playable.size() - 1);
  std::vector<double> block_start = state.ratings();
  for (int64_t step = 0; step < params.steps; ++step) {
    const Cell& cell = *playable[pick_cell(state.rng())];
    const size_t n = cell.methods.size();
    std::uniform_int_distribution<size_t> pick_first(0, n - 1);
    std::uniform_int_distribution<size_t> pick_second(0, n - 2);
    const size_t i = pick_first(state.rng());
    size_t j = pick_second(state.rng());
    if (j >= i) ++j;
    const double vi = cell.values[i], vj = cell.values[j];
    const double score = vi > vj ? 1.0 : vi < vj ? 0.0 : 0.5;
    state.PlayGame(cell.methods[i], cell.methods[j], score);
    if ((step + 1) % params.trace_block == 0 || step + 1 == params.steps) {
      double max_change = 0.0;
      for (size_t m = 0; m < methods.size(); ++m) {
        max_change = std::max(max_change, std::abs(state.ratings()[m] - block_start[m]));
      }
      run.trace.push_back(max_change);
      run.trace_steps.push_back(step + 1);
      block_start = state.ratings();
    }
  }

  const auto stats = state.WindowStats();
  for (size_t m = 0; m < methods.size(); ++m) {
    run.ratings.push_back({methods[m], stats[m].first, stats[m].second});
  }
  run.final_ratings = state.ratings();
  for (double r : run.final_ratings) run.rating_sum += r;
  return run;
}

std::vector<EloRun> RunPartitions(std::span<const ExperimentResult> results,
                                  std::span<const std::string> partitions,
                                  const EloParams& params, uint64_t seed) {
  std::vector<EloRun> runs(partitions.size());
  std::vector<std::string> errors(partitions.size());
  const int64_t n = static_cast<int64_t>(partitions.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t i = 0; i < n; ++i) {
    const size_t k = static_cast<size_t>(i);
    try {
      runs[k] = RunRating(results, partitions[k], params, seed);
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) Fail(ErrorKind::kValidation, e);
  }
  return runs;
}

Table RatingsToTable(std::span<const EloRun> runs) {
  Table t;
  t.header = {"method", "partition", "elo_mean", "elo_var"};
  for (const auto& run : runs) {
    for (const auto& r : run.ratings) {
      t.rows.push_back({r.method, run.partition, FormatDouble(r.mean), FormatDouble(r.var)});
    }
  }
  return t;
}

Table TraceToTable(std::span<const EloRun> runs) {
  Table t;
  t.header = {"partition", "step", "max_abs_change"};
  for (const auto& run : runs) {
    for (size_t b = 0; b < run.trace.size(); ++b) {
      t.rows.push_back({run.partition, std::to_string(run.trace_steps[b]),
                        FormatDouble(run.trace[b])});
    }
  }
  return t;
}

}  // namespace ueval::elo
