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

#ifndef UEVAL_RISKMETRICS_H_
#define UEVAL_RISKMETRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ueval/errors.h"

// Rank-correlation metrics relating uncertainty scores to risk indicators.
namespace ueval::risk {

// Sample AUROC with ties counted 1/2, computed from average ranks. Labels are
// 0/1 with 1 the positive class.
double Auroc(std::span<const double> scores, std::span<const int> labels);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> FractionalRanks(std::span<const double> values);

// Pearson correlation of fractional ranks.
double Spearman(std::span<const double> a, std::span<const double> b);

// Binarizes a raw correctness column at threshold d, keeping nulls.
std::vector<std::optional<int>> BinarizeColumn(
    std::span<const std::optional<double>> column, double d);

// AUROC of uncertainty against incorrectness over records with a non-null
// correctness value. The number of excluded records is reported via `diag`.
double XiSp(std::span<const double> uncertainties,
            std::span<const std::optional<int>> correctness,
            Diagnostics* diag = nullptr);

// Mean of XiSp over judge columns. Columns whose AUROC is undefined are
// skipped with a warning; if all are skipped an undefined-metric error is
// raised.
double XiSpMoji(std::span<const double> uncertainties,
                std::span<const std::vector<std::optional<int>>> columns,
                Diagnostics* diag = nullptr);

// Flips each label independently with probability p in [0, 0.5).
std::vector<int> ApplyBernoulliNoise(std::span<const int> labels, double p,
                                     uint64_t seed);

double PredictedNoisyAuroc(double auroc_orig, double p);

struct BiasDecomposition {
  double auroc_undist = 0.0;  // undistorted partition, original labels
  double auroc_dist = 0.0;    // distorted partition, original labels
  // Pair-count weights over the flipped-label classes:
  //   w_undist = n(y=1,d=0) n(y=0,d=0) / (n_pos n_neg)
  //   w_dist   = n(y=0,d=1) n(y=1,d=1) / (n_pos n_neg)
  //   w_pos_flipped = n_pos(d=1) / n_pos,  w_neg_flipped = n_neg(d=1) / n_neg
  double w_undist = 0.0;
  double w_dist = 0.0;
  double w_pos_flipped = 0.0;
  double w_neg_flipped = 0.0;
  double reconstruction = 0.0;
  double direct = 0.0;  // AUROC on the flipped labels
};

// Flips labels where mask = 1 and decomposes the resulting AUROC into the
// AUROCs of the undistorted and distorted partitions. A partition lacking one
// of the classes contributes 0 with weight 0.
BiasDecomposition DecomposeBiasedAuroc(std::span<const double> scores,
                                       std::span<const int> labels,
                                       std::span<const int> mask);

// SD (ddof = 1) over `trials` bootstrap means of n values resampled with
// replacement from judge_xis.
double BootstrapSd(std::span<const double> judge_xis, int n, int trials,
                   uint64_t seed);

double OodAuroc(std::span<const double> uncertainties,
                std::span<const int> ood_labels);

enum class CorKind { kSpearman, kPairAuroc };

// One record's perturbation grid: (strength, uncertainty) pairs.
using PerturbSeries = std::vector<std::pair<double, double>>;

// Mean over records of the rank correlation between uncertainty and strength.
// kPairAuroc is the concordance probability over pairs of distinct strengths
// (ties in uncertainty count 1/2). Records with constant uncertainty count 0
// for Spearman and 0.5 for pair AUROC, with a warning.
double XiPerturb(std::span<const PerturbSeries> series, CorKind kind,
                 Diagnostics* diag = nullptr);

}  // namespace ueval::risk

#endif  // UEVAL_RISKMETRICS_H_
