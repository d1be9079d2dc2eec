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

#include "badgd/risk.h"

#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace badgd {
namespace {

using ::badgd::testing::Ex;
using ::badgd::testing::Fixture;
using ::badgd::testing::MakeDataset;
using ::badgd::testing::Vec;

TEST(PointLossTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double a, PointLoss(Vec({1, 1}), Ex({1, 0}, 1)));
  EXPECT_EQ(a, 0.0);
  ASSERT_OK_AND_ASSIGN(double b, PointLoss(Vec({1, 1}), Ex({0, 1}, 3)));
  EXPECT_EQ(b, 4.0);
  ASSERT_OK_AND_ASSIGN(double c, PointLoss(Vec({0}), Ex({5}, 2)));
  EXPECT_EQ(c, 4.0);
  EXPECT_FALSE(PointLoss(Vec({1}), Ex({1, 2}, 0)).ok());
}

TEST(EmpiricalRiskTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double a, EmpiricalRisk(Vec({1, 0}), Fixture()));
  EXPECT_DOUBLE_EQ(a, 0.5);
  ASSERT_OK_AND_ASSIGN(
      double b,
      EmpiricalRisk(Vec({1, 1}), MakeDataset({Ex({1, 0}, 1), Ex({0, 1}, 3)})));
  EXPECT_DOUBLE_EQ(b, 2.0);
  ASSERT_OK_AND_ASSIGN(double c,
                       EmpiricalRisk(Vec({2, -1}), MakeDataset({Ex({1, 1}, 1)})));
  EXPECT_EQ(c, 0.0);
  EXPECT_FALSE(EmpiricalRisk(Vec({1, 0, 0}), Fixture()).ok());
}

TEST(PointGradientTest, Examples) {
  ASSERT_OK_AND_ASSIGN(Vector a, PointGradient(Vec({1, 1}), Ex({0, 1}, 3)));
  EXPECT_EQ(a, Vec({0, -4}));
  ASSERT_OK_AND_ASSIGN(Vector b, PointGradient(Vec({1, 1}), Ex({1, 0}, 1)));
  EXPECT_TRUE(b.isZero());
  ASSERT_OK_AND_ASSIGN(Vector c, PointGradient(Vec({0}), Ex({1}, 1)));
  EXPECT_EQ(c, Vec({-2}));
}

TEST(RiskGradientTest, FixtureMatchesClosedForm) {
  ASSERT_OK_AND_ASSIGN(Vector g, RiskGradient(Vec({1, 0}), Fixture()));
  EXPECT_EQ(g, Vec({0, 2}));
  const Vector from_stats =
      RiskGradientFromStats(Vec({1, 0}), ComputeSufficientStats(Fixture()));
  EXPECT_EQ(from_stats, Vec({0, 2}));
}

TEST(RiskGradientTest, SinglePointEqualsPointGradient) {
  const Example e = Ex({0.3, -2}, 1.7);
  ASSERT_OK_AND_ASSIGN(Vector g, RiskGradient(Vec({0.5, 0.25}), MakeDataset({e})));
  ASSERT_OK_AND_ASSIGN(Vector p, PointGradient(Vec({0.5, 0.25}), e));
  EXPECT_EQ(g, p);
}

TEST(RiskGradientTest, MatchesCentralDifference) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const testing::Instance inst = testing::RandomInstance(rng);
    ASSERT_OK_AND_ASSIGN(Vector g, RiskGradient(inst.w, inst.d0));
    const double h = 1e-5;
    Vector fd(inst.w.size());
    for (Eigen::Index j = 0; j < inst.w.size(); ++j) {
      Vector up = inst.w, down = inst.w;
      up[j] += h;
      down[j] -= h;
      fd[j] = (internal::MeanSquareLoss(up, inst.d0) -
               internal::MeanSquareLoss(down, inst.d0)) /
              (2 * h);
    }
    EXPECT_LE((fd - g).norm(), 1e-6 * std::max(1.0, g.norm()))
        << "trial " << trial;
  }
}

TEST(RiskGradientTest, StatsFormMatchesDirectMean) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const testing::Instance inst = testing::RandomInstance(rng);
    ASSERT_OK_AND_ASSIGN(Vector g, RiskGradient(inst.w, inst.d0));
    const Vector s = RiskGradientFromStats(inst.w, ComputeSufficientStats(inst.d0));
    const double scale = testing::InputScale(inst);
    EXPECT_LE((g - s).lpNorm<Eigen::Infinity>(), 1e-10 * scale * scale * scale);
  }
}

TEST(MixtureIdentityTest, OnePointExample) {
  const Dataset d0 = MakeDataset({Ex({1, 0}, 1)});
  ASSERT_OK_AND_ASSIGN(MixtureIdentity m,
                       CheckMixtureIdentity(Vec({1, 1}), d0, Ex({0, 1}, 3)));
  EXPECT_EQ(m.lhs, Vec({0, -2}));
  EXPECT_LE(m.gap, 1e-15);
}

TEST(MixtureIdentityTest, DuplicatePointLeavesGradient) {
  const Dataset d0 = MakeDataset({Ex({1.5, -2}, 0.7)});
  const Vector w = Vec({0.2, 0.9});
  ASSERT_OK_AND_ASSIGN(MixtureIdentity m, CheckMixtureIdentity(w, d0, d0[0]));
  ASSERT_OK_AND_ASSIGN(Vector clean, RiskGradient(w, d0));
  EXPECT_LE((m.lhs - clean).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(RiskGapTest, Examples) {
  const Dataset one = MakeDataset({Ex({1, 0}, 1)});
  ASSERT_OK_AND_ASSIGN(RiskGap a, ComputeRiskGap(Vec({1, 1}), one, Ex({0, 1}, 3)));
  EXPECT_DOUBLE_EQ(a.direct, 2.0);
  EXPECT_DOUBLE_EQ(a.closed_form, 2.0);
  EXPECT_DOUBLE_EQ(a.unscaled, 4.0);

  ASSERT_OK_AND_ASSIGN(RiskGap b,
                       ComputeRiskGap(Vec({1, 0}), Fixture(), Ex({-1, 0}, 2)));
  // (1/(n+1)) (l_v - L) = (1/3)(9 - 0.5); direct: 10/3 - 1/2.
  EXPECT_NEAR(b.direct, 17.0 / 6.0, 1e-14);
  EXPECT_NEAR(b.closed_form, 17.0 / 6.0, 1e-14);
  EXPECT_NEAR(b.unscaled, 8.5, 1e-14);
}

TEST(RiskGapTest, VanishesWhenTriggerLossEqualsRisk) {
  // L(w, D0) = 0.5 at w = [1, 0]; a point with loss 0.5 leaves risk unchanged.
  ASSERT_OK_AND_ASSIGN(
      RiskGap g, ComputeRiskGap(Vec({1, 0}), Fixture(), Ex({0, 0}, std::sqrt(0.5))));
  EXPECT_NEAR(g.direct, 0.0, 1e-15);
  EXPECT_NEAR(g.closed_form, 0.0, 1e-15);
}

TEST(GradientGapTest, OnePointExample) {
  const Dataset d0 = MakeDataset({Ex({1, 0}, 1)});
  ASSERT_OK_AND_ASSIGN(GradientGap g,
                       ComputeGradientGap(Vec({1, 1}), d0, Ex({0, 1}, 3)));
  EXPECT_EQ(g.direct, Vec({0, -2}));
  EXPECT_EQ(g.closed_form, Vec({0, -2}));
  EXPECT_EQ(g.square_loss_form, Vec({0, -2}));
}

TEST(GradientGapTest, ZeroForExactFits) {
  const Vector w = Vec({2, -1});
  const Dataset d0 = MakeDataset({Ex({1, 1}, 1), Ex({0, 1}, -1)});
  ASSERT_OK_AND_ASSIGN(GradientGap g, ComputeGradientGap(w, d0, Ex({3, 1}, 5)));
  EXPECT_TRUE(g.direct.isZero());
  EXPECT_TRUE(g.closed_form.isZero());
  EXPECT_LE(g.square_loss_form.lpNorm<Eigen::Infinity>(), 1e-14);
}

// Identities over a random corpus, entries in [-10, 10], dims <= 8, n <= 32.
TEST(GapIdentityTest, RandomCorpus) {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 1000; ++trial) {
    const testing::Instance inst = testing::RandomInstance(rng);
    const double scale = testing::InputScale(inst);
    const double tol_risk = 1e-10 * scale;
    const double tol_grad = 1e-10 * scale;
    ASSERT_OK_AND_ASSIGN(MixtureIdentity m,
                         CheckMixtureIdentity(inst.w, inst.d0, inst.v));
    EXPECT_LE(m.gap, tol_grad) << "trial " << trial;
    ASSERT_OK_AND_ASSIGN(RiskGap r, ComputeRiskGap(inst.w, inst.d0, inst.v));
    EXPECT_NEAR(r.direct, r.closed_form, tol_risk) << "trial " << trial;
    EXPECT_NEAR(r.unscaled, (inst.d0.size() + 1.0) * r.closed_form,
                tol_risk * (inst.d0.size() + 1.0));
    ASSERT_OK_AND_ASSIGN(GradientGap g,
                         ComputeGradientGap(inst.w, inst.d0, inst.v));
    EXPECT_LE((g.direct - g.closed_form).lpNorm<Eigen::Infinity>(), tol_grad);
    EXPECT_LE((g.direct - g.square_loss_form).lpNorm<Eigen::Infinity>(), tol_grad);
  }
}

TEST(LossKindTest, OnlySquare) {
  ASSERT_OK_AND_ASSIGN(LossKind k, ParseLossKind("square"));
  EXPECT_EQ(k, LossKind::kSquare);
  EXPECT_EQ(LossKindName(k), "square");
  EXPECT_FALSE(ParseLossKind("hinge").ok());
}

}  // namespace
}  // namespace badgd
