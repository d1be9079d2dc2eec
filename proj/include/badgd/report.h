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

// The single JSON document produced by an audit run.

#ifndef BADGD_REPORT_H_
#define BADGD_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "badgd/gdp.h"
#include "badgd/risk.h"
#include "badgd/serialization.h"
#include "badgd/sim.h"
#include "badgd/triggers.h"

namespace badgd {

// One cross-check between two routes to the same quantity. Gating checks are
// exact algebraic identities and decide the exit code; the others are
// statistical (Monte Carlo within 3 standard errors) and only reported.
struct ConsistencyCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool gating = true;

  friend bool operator==(const ConsistencyCheck&,
                         const ConsistencyCheck&) = default;
};

struct AuditInputs {
  std::string data_source;
  int n = 0;
  int feature_dim = 0;
  std::vector<double> weights;
  std::string loss = "square";
  std::string objective;
  TriggerConstraints constraints;
  double gamma = 0.0;
  double sigma = 0.0;
  double delta = 0.0;
  int64_t trials = 0;
  std::vector<double> alphas;
  uint64_t seed = 0;
  int oracle_budget = 0;

  friend bool operator==(const AuditInputs&, const AuditInputs&) = default;
};

struct GradientGapSummary {
  double norm_direct = 0.0;
  double norm_closed_form = 0.0;
  double norm_square_loss_form = 0.0;
  // Objective G from the stats; norm = (2 / (n + 1)) G.
  ScaledValue objective;

  friend bool operator==(const GradientGapSummary&,
                         const GradientGapSummary&) = default;
};

struct SnrSummary {
  Snr from_stats;
  // |mu(D1) - mu(D0)| / sigma_gamma with gradients from the datasets.
  double from_datasets = 0.0;
  // reduced / definitional = sqrt((n + 1) / (2 gamma)).
  double reduced_to_definitional = 0.0;

  friend bool operator==(const SnrSummary&, const SnrSummary&) = default;
};

struct OracleComparison {
  OracleResult best;
  // Objective of the audited trigger in the same units, for side-by-side
  // reading. No ordering between the two is asserted.
  ScaledValue audited;

  friend bool operator==(const OracleComparison&,
                         const OracleComparison&) = default;
};

struct AuditReport {
  AuditInputs inputs;
  SufficientStats stats;
  Trigger trigger;
  ScaledValue objective;
  // Closed-form distortion of the constructor, when the trigger came from one.
  std::optional<double> closed_form_distortion;
  RiskGap risk_gap;
  GradientGapSummary gradient_gap;
  double mixture_identity_gap = 0.0;
  SnrSummary snr;
  TradeoffCurve analytic_curve;
  std::vector<DistinguisherResult> monte_carlo;
  PrivacyBudget budget;
  BudgetBound budget_lower_bound;
  std::optional<OracleComparison> oracle;
  std::vector<ConsistencyCheck> checks;
  bool consistent = false;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

Json AuditReportToJson(const AuditReport& report);
absl::StatusOr<AuditReport> AuditReportFromJson(const Json& j);

// Pretty-printed with two-space indentation and a trailing newline.
std::string SerializeAuditReport(const AuditReport& report);
absl::StatusOr<AuditReport> ParseAuditReport(std::string_view text);

}  // namespace badgd

#endif  // BADGD_REPORT_H_
