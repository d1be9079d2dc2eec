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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "badgd/format.h"
#include "badgd/gdp.h"
#include "badgd/risk.h"
#include "badgd/sim.h"

namespace badgd {
namespace {

class CheckList {
 public:
  void Close(std::string name, double lhs, double rhs) {
    const double tol =
        kAuditTolerance * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
    Add(std::move(name), lhs, rhs, tol, true);
  }

  // Compares two vectors through the max-norm of their difference.
  void CloseVec(std::string name, const Vector& a, const Vector& b) {
    const double scale = std::max(a.lpNorm<Eigen::Infinity>(),
                                  b.lpNorm<Eigen::Infinity>());
    Add(std::move(name), (a - b).lpNorm<Eigen::Infinity>(), 0.0,
        kAuditTolerance * (1.0 + scale), true);
  }

  void Add(std::string name, double lhs, double rhs, double tol, bool gating) {
    const bool passed = std::isfinite(lhs) && std::isfinite(rhs) &&
                        std::abs(lhs - rhs) <= tol;
    checks_.push_back(ConsistencyCheck{.name = std::move(name),
                                       .lhs = lhs,
                                       .rhs = rhs,
                                       .tolerance = tol,
                                       .passed = passed,
                                       .gating = gating});
  }

  void AddRaw(ConsistencyCheck check) { checks_.push_back(std::move(check)); }

  std::vector<ConsistencyCheck> Take() { return std::move(checks_); }

 private:
  std::vector<ConsistencyCheck> checks_;
};

absl::Status ValidateConfig(const AuditConfig& config) {
  if (config.weights.size() != config.data.feature_dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("weights have ", config.weights.size(),
                     " entries; dataset has feature_dim ",
                     config.data.feature_dim()));
  }
  if (!config.weights.allFinite()) {
    return absl::InvalidArgumentError("weights must be finite");
  }
  if (absl::Status s = config.constraints.Validate(); !s.ok()) return s;
  if (!(config.gamma > 0.0) || !std::isfinite(config.gamma)) {
    return absl::InvalidArgumentError("gamma must be finite and > 0");
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    return absl::InvalidArgumentError(
        "sigma must be finite and > 0 for an audit; the signal-to-noise "
        "ratio is undefined at sigma = 0");
  }
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (config.trials < 0) {
    return absl::InvalidArgumentError("trials must be >= 0");
  }
  if (config.oracle_budget < 0) {
    return absl::InvalidArgumentError("oracle budget must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<Trigger> BuildTrigger(const AuditConfig& config,
                                     const SufficientStats& stats) {
  if (config.trigger.has_value()) return *config.trigger;
  switch (config.objective) {
    case TriggerObjective::kRiskWarp:
      return MakeRiskWarpTrigger(config.weights, config.constraints);
    case TriggerObjective::kGradWarp:
      return MakeGradWarpTrigger(config.weights, config.constraints, stats);
    case TriggerObjective::kGradDistWarp:
      return MakeGradDistWarpTrigger(config.weights, config.constraints, stats);
  }
  return absl::InternalError("unhandled objective");
}

absl::StatusOr<double> ClosedFormDistortion(const AuditConfig& config,
                                            const SufficientStats& stats) {
  if (config.objective == TriggerObjective::kRiskWarp) {
    return RiskWarpDistortion(config.weights, stats, config.constraints);
  }
  return GradWarpDistortion(config.weights, stats,
                            config.constraints.trigger_scale);
}

}  // namespace

absl::StatusOr<AuditReport> RunAudit(const AuditConfig& config) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) return s;
  const Vector& w = config.weights;
  const Dataset& d0 = config.data;
  const NoiseParams noise{.gamma = config.gamma, .sigma = config.sigma};

  AuditReport r;
  r.inputs = AuditInputs{
      .data_source = config.data_source,
      .n = d0.size(),
      .feature_dim = d0.feature_dim(),
      .weights = std::vector<double>(w.data(), w.data() + w.size()),
      .loss = std::string(LossKindName(LossKind::kSquare)),
      .objective = std::string(TriggerObjectiveName(config.objective)),
      .constraints = config.constraints,
      .gamma = config.gamma,
      .sigma = config.sigma,
      .delta = config.delta,
      .trials = config.trials,
      .alphas = config.alphas,
      .seed = config.seed,
      .oracle_budget = config.oracle_budget,
  };
  r.stats = ComputeSufficientStats(d0);
  const double n1 = r.stats.n + 1.0;

  absl::StatusOr<Trigger> trigger = BuildTrigger(config, r.stats);
  if (!trigger.ok()) return trigger.status();
  if (absl::Status s = ValidateTrigger(*trigger); !s.ok()) return s;
  r.trigger = *std::move(trigger);
  const Example v = r.trigger.AsExample();
  if (!config.trigger.has_value()) {
    absl::StatusOr<double> closed = ClosedFormDistortion(config, r.stats);
    if (!closed.ok()) return closed.status();
    r.closed_form_distortion = *closed;
  }

  absl::StatusOr<ScaledValue> objective =
      EvaluateObjective(config.objective, w, r.stats, v, noise);
  if (!objective.ok()) return objective.status();
  r.objective = *std::move(objective);

  absl::StatusOr<RiskGap> risk_gap = ComputeRiskGap(w, d0, v);
  if (!risk_gap.ok()) return risk_gap.status();
  r.risk_gap = *risk_gap;

  absl::StatusOr<GradientGap> grad_gap = ComputeGradientGap(w, d0, v);
  if (!grad_gap.ok()) return grad_gap.status();
  absl::StatusOr<ScaledValue> grad_objective =
      EvaluateObjective(TriggerObjective::kGradWarp, w, r.stats, v);
  if (!grad_objective.ok()) return grad_objective.status();
  r.gradient_gap = GradientGapSummary{
      .norm_direct = grad_gap->direct.norm(),
      .norm_closed_form = grad_gap->closed_form.norm(),
      .norm_square_loss_form = grad_gap->square_loss_form.norm(),
      .objective = *std::move(grad_objective),
  };

  absl::StatusOr<MixtureIdentity> mixture = CheckMixtureIdentity(w, d0, v);
  if (!mixture.ok()) return mixture.status();
  r.mixture_identity_gap = mixture->gap;

  absl::StatusOr<Snr> snr = GradDistWarpSnr(w, r.stats, v, noise);
  if (!snr.ok()) return snr.status();
  absl::StatusOr<double> snr_datasets = DefinitionalSnr(w, d0, v, noise);
  if (!snr_datasets.ok()) return snr_datasets.status();
  r.snr = SnrSummary{.from_stats = *snr,
                     .from_datasets = *snr_datasets,
                     .reduced_to_definitional = std::sqrt(n1 / (2.0 * config.gamma))};
  const double d = snr->definitional;

  absl::StatusOr<TradeoffCurve> curve = GaussianTradeoffCurve(d, config.alphas);
  if (!curve.ok()) return curve.status();
  r.analytic_curve = *std::move(curve);

  if (config.trials > 0) {
    const NoisyGdConfig cfg{.gamma = config.gamma,
                            .sigma = config.sigma,
                            .steps = 1,
                            .seed = config.seed};
    absl::StatusOr<std::vector<DistinguisherResult>> mc =
        MonteCarloTradeoff(w, d0, v, cfg, r.analytic_curve.alphas,
                           config.trials, config.threads);
    if (!mc.ok()) return mc.status();
    r.monte_carlo = *std::move(mc);
  }

  absl::StatusOr<PrivacyBudget> budget = SnrToBudget(d, config.delta);
  if (!budget.ok()) return budget.status();
  r.budget = *budget;
  r.budget_lower_bound = BudgetLowerBound(d, config.delta);

  if (config.oracle_budget > 0) {
    OracleOptions options;
    options.budget = config.oracle_budget;
    options.seed = config.seed;
    options.noise = noise;
    options.threads = config.threads;
    absl::StatusOr<OracleResult> best =
        OracleSearch(config.objective, w, r.stats, config.constraints, options);
    if (!best.ok()) return best.status();
    r.oracle = OracleComparison{.best = *std::move(best), .audited = r.objective};
  }

  CheckList checks;
  checks.Close("risk_gap.direct_vs_closed_form", r.risk_gap.direct,
               r.risk_gap.closed_form);
  checks.Close("risk_gap.unscaled_vs_scaled", r.risk_gap.unscaled,
               n1 * r.risk_gap.direct);
  checks.CloseVec("gradient_gap.direct_vs_closed_form", grad_gap->direct,
                  grad_gap->closed_form);
  checks.CloseVec("gradient_gap.direct_vs_square_loss_form", grad_gap->direct,
                  grad_gap->square_loss_form);
  checks.Add("mixture_identity.gap", r.mixture_identity_gap, 0.0,
             kAuditTolerance *
                 (1.0 + mixture->lhs.lpNorm<Eigen::Infinity>()),
             true);
  absl::StatusOr<double> riskwarp = RiskWarpObjective(w, r.stats, v);
  if (!riskwarp.ok()) return riskwarp.status();
  checks.Close("riskwarp_objective_vs_scaled_risk_gap", *riskwarp,
               n1 * r.risk_gap.direct);
  checks.Close("gradwarp_objective_vs_scaled_gradient_gap",
               r.gradient_gap.objective.unscaled,
               n1 / 2.0 * r.gradient_gap.norm_direct);
  checks.Close("objective.scaled_vs_factor", r.objective.scaled,
               r.objective.factor * r.objective.unscaled);
  if (r.closed_form_distortion.has_value()) {
    const double evaluated = config.objective == TriggerObjective::kRiskWarp
                                 ? *riskwarp
                                 : r.gradient_gap.objective.unscaled;
    checks.Close("closed_form_distortion_vs_objective",
                 *r.closed_form_distortion, evaluated);
  }
  checks.Close("snr.stats_vs_datasets", r.snr.from_stats.definitional,
               r.snr.from_datasets);
  checks.Close("snr.definitional_vs_gradient_gap_over_sigma",
               r.snr.from_stats.definitional,
               r.gradient_gap.norm_direct / config.sigma);
  checks.Close("snr.reduced_vs_definitional",
               r.snr.from_stats.reduced,
               r.snr.reduced_to_definitional * r.snr.from_stats.definitional);

  {
    double worst_rise = 0.0;
    double worst_power = 0.0;
    const TradeoffCurve& c = r.analytic_curve;
    for (size_t i = 0; i < c.alphas.size(); ++i) {
      if (i > 0) worst_rise = std::max(worst_rise, c.type2[i] - c.type2[i - 1]);
      worst_power =
          std::max(worst_power, std::abs(c.power[i] - (1.0 - c.type2[i])));
    }
    checks.Add("curve.type2_nonincreasing", worst_rise, 0.0, 0.0, true);
    checks.Add("curve.power_is_complement", worst_power, 0.0, 1e-15, true);
  }

  {
    // The solver contract: delta(eps) matches the target when eps > 0 and is
    // already below it when eps = 0.
    double achieved = 0.0;
    if (d > 0.0) {
      absl::StatusOr<double> at = DeltaOfEpsilon(r.budget.epsilon, d);
      if (!at.ok()) return at.status();
      achieved = *at;
    }
    const double tol = 1e-8;
    const bool passed = r.budget.epsilon > 0.0
                            ? std::abs(achieved - config.delta) <= tol
                            : achieved <= config.delta + tol;
    checks.AddRaw(ConsistencyCheck{.name = "budget.delta_round_trip",
                                   .lhs = achieved,
                                   .rhs = config.delta,
                                   .tolerance = tol,
                                   .passed = passed,
                                   .gating = true});
  }

  // Statistical brackets: each fails with probability about 0.3% even when
  // the model is right, so they are reported without gating the result.
  for (const DistinguisherResult& m : r.monte_carlo) {
    const std::string tag = absl::StrCat("[alpha=", FormatDouble(m.alpha), "]");
    checks.Add(absl::StrCat("monte_carlo.type2_within_3se", tag), m.est_type2,
               m.analytic_type2, 3.0 * m.std_err, false);
    const double se1 =
        std::sqrt(m.alpha * (1.0 - m.alpha) / static_cast<double>(m.trials));
    checks.Add(absl::StrCat("monte_carlo.type1_within_3se", tag), m.est_type1,
               m.alpha, 3.0 * se1, false);
  }

  r.checks = checks.Take();
  r.consistent = std::all_of(
      r.checks.begin(), r.checks.end(),
      [](const ConsistencyCheck& c) { return c.passed || !c.gating; });
  return r;
}

}  // namespace badgd
