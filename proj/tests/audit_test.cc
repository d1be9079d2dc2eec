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

#include "badgd/audit.h"

#include <cmath>
#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace badgd {
namespace {

using ::badgd::testing::Ex;
using ::badgd::testing::Fixture;
using ::badgd::testing::Vec;

AuditConfig FixtureConfig() {
  AuditConfig c{.data = Fixture(), .data_source = "fixture", .weights = Vec({1, 0})};
  c.trials = 20000;
  c.oracle_budget = 200;
  c.seed = 3;
  c.threads = 2;
  return c;
}

const ConsistencyCheck* Find(const AuditReport& r, const std::string& name) {
  for (const ConsistencyCheck& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TEST(AuditTest, FixtureGradWarp) {
  AuditConfig c = FixtureConfig();
  c.objective = TriggerObjective::kGradWarp;
  ASSERT_OK_AND_ASSIGN(AuditReport r, RunAudit(c));
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.trigger.x_v, Vec({1, 0}));
  EXPECT_DOUBLE_EQ(r.trigger.y_v, 0.5);
  EXPECT_NEAR(r.objective.unscaled, std::sqrt(1.25), 1e-15);
  ASSERT_TRUE(r.closed_form_distortion.has_value());
  EXPECT_NEAR(*r.closed_form_distortion, std::sqrt(1.25), 1e-15);
  EXPECT_NEAR(r.snr.from_stats.definitional, 0.7453559924999299, 1e-15);
  EXPECT_NEAR(r.budget.epsilon, 2.1890373659967994, 1e-9);
  EXPECT_FALSE(r.budget_lower_bound.value.has_value());
  ASSERT_TRUE(r.oracle.has_value());
  EXPECT_EQ(r.oracle->audited, r.objective);
  EXPECT_EQ(r.monte_carlo.size(), r.analytic_curve.alphas.size());
  for (const ConsistencyCheck& check : r.checks) {
    if (check.gating) EXPECT_TRUE(check.passed) << check.name;
  }
}

TEST(AuditTest, FixtureRiskWarp) {
  AuditConfig c = FixtureConfig();
  c.objective = TriggerObjective::kRiskWarp;
  c.constraints.response_bound = 2.0;
  ASSERT_OK_AND_ASSIGN(AuditReport r, RunAudit(c));
  EXPECT_TRUE(r.consistent);
  EXPECT_NEAR(r.objective.unscaled, 8.5, 1e-14);
  EXPECT_NEAR(*r.closed_form_distortion, 8.5, 1e-14);
  EXPECT_NEAR(r.risk_gap.direct, 8.5 / 3.0, 1e-14);
  const ConsistencyCheck* check = Find(r, "riskwarp_objective_vs_scaled_risk_gap");
  ASSERT_NE(check, nullptr);
  EXPECT_TRUE(check->passed);
}

TEST(AuditTest, ZeroGapTrigger) {
  AuditConfig c = FixtureConfig();
  c.trigger = Trigger{.x_v = Vec({0, 1}), .y_v = -1};
  ASSERT_OK_AND_ASSIGN(AuditReport r, RunAudit(c));
  EXPECT_TRUE(r.consistent);
  EXPECT_FALSE(r.closed_form_distortion.has_value());
  EXPECT_LE(r.snr.from_stats.definitional, 1e-15);
  EXPECT_EQ(r.budget.epsilon, 0.0);
  for (size_t i = 0; i < r.analytic_curve.alphas.size(); ++i) {
    EXPECT_NEAR(r.analytic_curve.type2[i], 1.0 - r.analytic_curve.alphas[i], 1e-12);
  }
}

TEST(AuditTest, Deterministic) {
  const AuditConfig c = FixtureConfig();
  ASSERT_OK_AND_ASSIGN(AuditReport a, RunAudit(c));
  AuditConfig more_threads = c;
  more_threads.threads = 5;
  ASSERT_OK_AND_ASSIGN(AuditReport b, RunAudit(more_threads));
  EXPECT_EQ(SerializeAuditReport(a), SerializeAuditReport(b));
}

TEST(AuditTest, SkipsOptionalStages) {
  AuditConfig c = FixtureConfig();
  c.trials = 0;
  c.oracle_budget = 0;
  ASSERT_OK_AND_ASSIGN(AuditReport r, RunAudit(c));
  EXPECT_TRUE(r.monte_carlo.empty());
  EXPECT_FALSE(r.oracle.has_value());
  EXPECT_TRUE(r.consistent);
}

TEST(AuditTest, ConfigErrors) {
  AuditConfig c = FixtureConfig();
  c.sigma = 0.0;
  EXPECT_FALSE(RunAudit(c).ok());
  c = FixtureConfig();
  c.weights = Vec({1, 0, 0});
  EXPECT_FALSE(RunAudit(c).ok());
  c = FixtureConfig();
  c.delta = 1.0;
  EXPECT_FALSE(RunAudit(c).ok());
  c = FixtureConfig();
  c.trials = 10;
  EXPECT_FALSE(RunAudit(c).ok());
  c = FixtureConfig();
  c.weights = Vec({0, 0});
  EXPECT_FALSE(RunAudit(c).ok());
}

TEST(AuditTest, SyntheticDataStaysConsistent) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    ASSERT_OK_AND_ASSIGN(Dataset d, GenerateSynthetic(40, 4, seed));
    AuditConfig c{.data = d, .data_source = "synthetic", .weights = Vec({1, -1, 0.5, 2})};
    c.trials = 0;
    c.oracle_budget = 50;
    c.constraints = {.x_norm_max = 3.0, .response_bound = 2.0, .trigger_scale = 0.8};
    for (TriggerObjective o : {TriggerObjective::kRiskWarp, TriggerObjective::kGradWarp,
                               TriggerObjective::kGradDistWarp}) {
      c.objective = o;
      ASSERT_OK_AND_ASSIGN(AuditReport r, RunAudit(c));
      EXPECT_TRUE(r.consistent) << "seed " << seed;
    }
  }
}

}  // namespace
}  // namespace badgd
