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

// End-to-end audit of one trigger against one clean dataset and weight point.

#ifndef BADGD_AUDIT_H_
#define BADGD_AUDIT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "badgd/dataset.h"
#include "badgd/report.h"
#include "badgd/triggers.h"

namespace badgd {

struct AuditConfig {
  Dataset data;
  std::string data_source;
  Vector weights;
  TriggerObjective objective = TriggerObjective::kGradDistWarp;
  // When set, audited as is; otherwise built by the objective's constructor.
  std::optional<Trigger> trigger;
  TriggerConstraints constraints;
  double gamma = 0.1;
  double sigma = 1.0;
  double delta = 1e-3;
  // 0 skips the Monte Carlo stage.
  int64_t trials = 100000;
  std::vector<double> alphas = {0.01, 0.05, 0.1, 0.2, 0.5};
  uint64_t seed = 0;
  // 0 skips the oracle search.
  int oracle_budget = 1000;
  int threads = 1;
};

// Relative tolerance of the gating algebraic checks:
// |lhs - rhs| <= kAuditTolerance * (1 + max(|lhs|, |rhs|)).
inline constexpr double kAuditTolerance = 1e-9;

// Runs every stage and fills AuditReport::checks. Errors are reserved for
// invalid configuration; failed checks only clear `consistent`.
absl::StatusOr<AuditReport> RunAudit(const AuditConfig& config);

}  // namespace badgd

#endif  // BADGD_AUDIT_H_
