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

#include "ueval/verification.h"

#include <gtest/gtest.h>

#include "oracles.h"
#include "ueval/riskmetrics.h"

namespace ueval::verify {
namespace {

TEST(GaussianShiftSampleTest, ClassSplitAndPopulationAuroc) {
  std::mt19937_64 rng(1);
  const SyntheticSample s = GaussianShiftSample(0.8, 7, rng);
  ASSERT_EQ(s.scores.size(), 7u);
  int positives = 0;
  for (int y : s.labels) positives += y;
  EXPECT_EQ(positives, 4);

  std::mt19937_64 big(2);
  const SyntheticSample large = GaussianShiftSample(0.8, 200000, big);
  EXPECT_NEAR(risk::Auroc(large.scores, large.labels), 0.8, 0.005);
  std::mt19937_64 half(3);
  const SyntheticSample chance = GaussianShiftSample(0.5, 200000, half);
  EXPECT_NEAR(risk::Auroc(chance.scores, chance.labels), 0.5, 0.005);
  EXPECT_THROW(GaussianShiftSample(1.0, 10, rng), Error);
  EXPECT_THROW(GaussianShiftSample(0.7, 1, rng), Error);
}

TEST(VerifyNoiseIdentityTest, ParallelMatchesSerialExactly) {
  const NoiseReport a = VerifyNoiseIdentity(0.75, 0.2, 500, 16, 99);
  const NoiseReport b = serial::VerifyNoiseIdentity(0.75, 0.2, 500, 16, 99);
  EXPECT_EQ(a.empirical_mean, b.empirical_mean);
  EXPECT_EQ(a.empirical_sd, b.empirical_sd);
  EXPECT_EQ(a.clean_mean, b.clean_mean);
  EXPECT_EQ(a.predicted_from_clean, b.predicted_from_clean);
  EXPECT_DOUBLE_EQ(a.predicted, risk::PredictedNoisyAuroc(0.75, 0.2));
}

TEST(VerifyNoiseIdentityTest, EmpiricalMeanTracksPrediction) {
  const NoiseReport r = VerifyNoiseIdentity(0.9, 0.1, 2000, 40, 5);
  EXPECT_NEAR(r.empirical_mean, r.predicted, 0.01);
  EXPECT_NEAR(r.empirical_mean, r.predicted_from_clean, 0.01);
  EXPECT_GT(r.empirical_sd, 0.0);
  const NoiseReport none = VerifyNoiseIdentity(0.9, 0.0, 200, 4, 5);
  EXPECT_DOUBLE_EQ(none.empirical_mean, none.clean_mean);
}

TEST(VerifyBiasDecompositionTest, ParallelMatchesSerialExactly) {
  const BiasReport a = VerifyBiasDecomposition(0.75, 0.2, 400, 12, 8);
  const BiasReport b = serial::VerifyBiasDecomposition(0.75, 0.2, 400, 12, 8);
  EXPECT_EQ(a.mean_residual, b.mean_residual);
  EXPECT_EQ(a.sd_residual, b.sd_residual);
  EXPECT_EQ(a.mean_direct, b.mean_direct);
  EXPECT_EQ(a.mean_reconstruction, b.mean_reconstruction);
}

TEST(VerifyBiasDecompositionTest, ResidualIsSmallAndZeroRateIsExact) {
  const BiasReport r = VerifyBiasDecomposition(0.9, 0.3, 1000, 30, 17);
  EXPECT_LT(std::abs(r.mean_residual), 0.01);
  const BiasReport clean = VerifyBiasDecomposition(0.9, 0.0, 300, 5, 17);
  EXPECT_EQ(clean.mean_residual, 0.0);
  EXPECT_EQ(clean.sd_residual, 0.0);
}

TEST(VerifyTest, RejectsBadArguments) {
  EXPECT_THROW(VerifyNoiseIdentity(0.9, 0.5, 100, 10, 1), Error);
  EXPECT_THROW(VerifyNoiseIdentity(0.9, 0.1, 100, 0, 1), Error);
  EXPECT_THROW(VerifyBiasDecomposition(0.9, 1.5, 100, 10, 1), Error);
}

}  // namespace
}  // namespace ueval::verify
