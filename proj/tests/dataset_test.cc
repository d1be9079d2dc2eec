// Copyright 2026 The badgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "badgd/dataset.h"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace badgd {
namespace {

using ::badgd::testing::Ex;
using ::badgd::testing::Fixture;
using ::badgd::testing::MakeDataset;
using ::badgd::testing::Vec;
using ::testing::HasSubstr;

TEST(DatasetTest, RejectsEmptyAndRaggedInput) {
  EXPECT_FALSE(Dataset::Create({}).ok());
  EXPECT_FALSE(Dataset::Create({Ex({1, 0}, 1), Ex({1}, 0)}).ok());
  EXPECT_FALSE(
      Dataset::Create({Ex({std::numeric_limits<double>::quiet_NaN()}, 0)}).ok());
  EXPECT_FALSE(
      Dataset::Create({Ex({1}, std::numeric_limits<double>::infinity())}).ok());
}

TEST(MakeBadDatasetTest, AppendsTriggerLast) {
  const Dataset d0 = MakeDataset({Ex({1, 0}, 1)});
  ASSERT_OK_AND_ASSIGN(Dataset d1,
                       MakeBadDataset(d0, Trigger{.x_v = Vec({0, 1}), .y_v = 3}));
  ASSERT_EQ(d1.size(), 2);
  EXPECT_EQ(d1[1], Ex({0, 1}, 3));
  EXPECT_EQ(d1[0], d0[0]);
  EXPECT_EQ(d0.size(), 1);
}

TEST(MakeBadDatasetTest, DimensionMismatch) {
  const Dataset d0 = MakeDataset({Ex({1}, 0)});
  EXPECT_FALSE(MakeBadDataset(d0, Trigger{.x_v = Vec({1, 1}), .y_v = 0}).ok());
}

TEST(MakeBadDatasetTest, IsPure) {
  const Dataset d0 = Fixture();
  const Trigger v{.x_v = Vec({-1, 0}), .y_v = 2};
  ASSERT_OK_AND_ASSIGN(Dataset a, MakeBadDataset(d0, v));
  ASSERT_OK_AND_ASSIGN(Dataset b, MakeBadDataset(d0, v));
  EXPECT_EQ(a, b);
  EXPECT_EQ(d0, Fixture());
}

TEST(ValidateTriggerTest, RiskWarpRespectsBound) {
  Trigger t{.x_v = Vec({1}), .y_v = 2, .kind = TriggerKind::kRiskWarp};
  EXPECT_FALSE(ValidateTrigger(t).ok());
  t.response_bound = 1.5;
  EXPECT_FALSE(ValidateTrigger(t).ok());
  t.response_bound = 2.0;
  EXPECT_OK(ValidateTrigger(t));
  t.kind = TriggerKind::kManual;
  t.response_bound.reset();
  EXPECT_OK(ValidateTrigger(t));
}

TEST(TriggerKindTest, NamesRoundTrip) {
  for (TriggerKind k : {TriggerKind::kManual, TriggerKind::kRiskWarp,
                        TriggerKind::kGradWarp, TriggerKind::kGradDistWarp}) {
    ASSERT_OK_AND_ASSIGN(TriggerKind parsed, ParseTriggerKind(TriggerKindName(k)));
    EXPECT_EQ(parsed, k);
  }
  EXPECT_FALSE(ParseTriggerKind("bogus").ok());
}

TEST(SufficientStatsTest, TwoPointFixture) {
  const SufficientStats s = ComputeSufficientStats(Fixture());
  EXPECT_EQ(s.n, 2);
  EXPECT_DOUBLE_EQ(s.s_y, 1.0);
  EXPECT_DOUBLE_EQ(s.s_yx[0], 0.5);
  EXPECT_DOUBLE_EQ(s.s_yx[1], -1.0);
  EXPECT_DOUBLE_EQ(s.s_xx(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.s_xx(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.s_xx(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(s.s_xx(1, 1), 2.0);
  EXPECT_OK(CheckSufficientStats(s));
}

TEST(SufficientStatsTest, ZeroPoint) {
  const SufficientStats s = ComputeSufficientStats(MakeDataset({Ex({0, 0}, 0)}));
  EXPECT_EQ(s.s_y, 0.0);
  EXPECT_TRUE(s.s_yx.isZero());
  EXPECT_TRUE(s.s_xx.isZero());
}

TEST(SufficientStatsTest, SinglePoint) {
  const Example e = Ex({2, -3, 0.5}, 1.5);
  const SufficientStats s = ComputeSufficientStats(MakeDataset({e}));
  EXPECT_DOUBLE_EQ(s.s_y, 2.25);
  EXPECT_TRUE(s.s_yx.isApprox(1.5 * e.x));
  EXPECT_TRUE(s.s_xx.isApprox(e.x * e.x.transpose()));
}

TEST(SufficientStatsTest, CheckRejectsBadMatrices) {
  SufficientStats s = ComputeSufficientStats(Fixture());
  s.s_xx(0, 1) = 1e-6;
  EXPECT_FALSE(CheckSufficientStats(s).ok());
  s = ComputeSufficientStats(Fixture());
  s.s_xx(1, 1) = -1.0;
  EXPECT_FALSE(CheckSufficientStats(s).ok());
  s = ComputeSufficientStats(Fixture());
  s.s_y = -1.0;
  EXPECT_FALSE(CheckSufficientStats(s).ok());
}

TEST(SufficientStatsTest, IncrementalUpdateMatchesRecompute) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const testing::Instance inst = testing::RandomInstance(rng);
    ASSERT_OK_AND_ASSIGN(
        Dataset d1,
        MakeBadDataset(inst.d0, Trigger{.x_v = inst.v.x, .y_v = inst.v.y}));
    const SufficientStats full = ComputeSufficientStats(d1);
    const SufficientStats inc =
        AddPointToStats(ComputeSufficientStats(inst.d0), inst.v);
    const double scale = testing::InputScale(inst);
    const double tol = 1e-12 * scale * scale;
    EXPECT_EQ(inc.n, full.n);
    EXPECT_NEAR(inc.s_y, full.s_y, tol);
    EXPECT_LE((inc.s_yx - full.s_yx).lpNorm<Eigen::Infinity>(), tol);
    EXPECT_LE((inc.s_xx - full.s_xx).lpNorm<Eigen::Infinity>(), tol);
    EXPECT_OK(CheckSufficientStats(full));
  }
}

TEST(CsvTest, ColumnConvention) {
  ASSERT_OK_AND_ASSIGN(Dataset d, ParseCsv("1.0,2.0,3.0\n", {.feature_dim = 2}));
  ASSERT_EQ(d.size(), 1);
  EXPECT_EQ(d[0], Ex({2, 3}, 1));
}

TEST(CsvTest, SkipsHeaderAndBlankLines) {
  ASSERT_OK_AND_ASSIGN(Dataset d,
                       ParseCsv("y,x1\n\n 1 , 2 \r\n3,4\n", {.skip_header = true}));
  ASSERT_EQ(d.size(), 2);
  EXPECT_EQ(d[1], Ex({4}, 3));
}

TEST(CsvTest, RejectsNonFinite) {
  absl::StatusOr<Dataset> d = ParseCsv("1.0,nan\n");
  ASSERT_FALSE(d.ok());
  EXPECT_THAT(d.status().message(), HasSubstr("line 1"));
}

TEST(CsvTest, ReportsLineNumbers) {
  absl::StatusOr<Dataset> d = ParseCsv("1,2\n3,abc\n");
  ASSERT_FALSE(d.ok());
  EXPECT_THAT(d.status().message(), HasSubstr("line 2"));
  d = ParseCsv("1,2\n3,4,5\n");
  ASSERT_FALSE(d.ok());
  EXPECT_THAT(d.status().message(), HasSubstr("line 2"));
  d = ParseCsv("7\n");
  ASSERT_FALSE(d.ok());
  EXPECT_THAT(d.status().message(), HasSubstr("line 1"));
  EXPECT_FALSE(ParseCsv("1,2,3\n", {.feature_dim = 1}).ok());
}

TEST(CsvTest, EmptyInput) {
  EXPECT_FALSE(ParseCsv("").ok());
  EXPECT_FALSE(ParseCsv("y,x\n", {.skip_header = true}).ok());
}

TEST(CsvTest, LoadsFixtureAndNamesMissingPath) {
  ASSERT_OK_AND_ASSIGN(Dataset d, LoadCsv(BADGD_FIXTURE));
  EXPECT_EQ(d, Fixture());
  absl::StatusOr<Dataset> missing = LoadCsv("/nonexistent/data.csv");
  ASSERT_FALSE(missing.ok());
  EXPECT_THAT(missing.status().message(), HasSubstr("/nonexistent/data.csv"));
}

TEST(CsvTest, WriterRoundTripsExactly) {
  ASSERT_OK_AND_ASSIGN(Dataset d, GenerateSynthetic(20, 4, 3));
  ASSERT_OK_AND_ASSIGN(Dataset back, ParseCsv(DatasetToCsv(d)));
  EXPECT_EQ(back, d);
}

TEST(SyntheticTest, DeterministicForSeed) {
  ASSERT_OK_AND_ASSIGN(Dataset a, GenerateSynthetic(5, 3, 7));
  ASSERT_OK_AND_ASSIGN(Dataset b, GenerateSynthetic(5, 3, 7));
  ASSERT_OK_AND_ASSIGN(Dataset c, GenerateSynthetic(5, 3, 8));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(a.size(), 5);
  EXPECT_EQ(a.feature_dim(), 3);
}

TEST(SyntheticTest, RejectsBadShape) {
  EXPECT_FALSE(GenerateSynthetic(0, 3, 1).ok());
  EXPECT_FALSE(GenerateSynthetic(3, 0, 1).ok());
}

TEST(SyntheticTest, FollowsDocumentedModel) {
  // x ~ N(0, I), y = sum_j x_j / (j + 1) + N(0, 1): the least-squares fit
  // recovers beta_j = 1 / (j + 1).
  ASSERT_OK_AND_ASSIGN(Dataset d, GenerateSynthetic(20000, 3, 21));
  const SufficientStats s = ComputeSufficientStats(d);
  const Vector beta = s.s_xx.ldlt().solve(s.s_yx);
  EXPECT_NEAR(beta[0], 1.0, 0.03);
  EXPECT_NEAR(beta[1], 0.5, 0.03);
  EXPECT_NEAR(beta[2], 1.0 / 3.0, 0.03);
  EXPECT_NEAR(s.s_xx(0, 0), 1.0, 0.05);
}

}  // namespace
}  // namespace badgd
