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

#include "badgd/report.h"

#include <string>
#include <utility>

#include "absl/strings/str_cat.h"

namespace badgd {
namespace {

Json OptionalDouble(const std::optional<double>& v) {
  return v.has_value() ? Json(*v) : Json(nullptr);
}

// Unwraps a StatusOr inside a decoder body that is allowed to throw.
template <typename T>
T Take(absl::StatusOr<T> v) {
  if (!v.ok()) throw std::invalid_argument(std::string(v.status().message()));
  return *std::move(v);
}

Json InputsToJson(const AuditInputs& in) {
  Json out;
  out["data_source"] = in.data_source;
  out["n"] = in.n;
  out["feature_dim"] = in.feature_dim;
  out["weights"] = in.weights;
  out["loss"] = in.loss;
  out["objective"] = in.objective;
  out["x_norm_max"] = in.constraints.x_norm_max;
  out["response_bound"] = in.constraints.response_bound;
  out["trigger_scale"] = in.constraints.trigger_scale;
  out["gamma"] = in.gamma;
  out["sigma"] = in.sigma;
  out["delta"] = in.delta;
  out["trials"] = in.trials;
  out["alphas"] = in.alphas;
  out["seed"] = in.seed;
  out["oracle_budget"] = in.oracle_budget;
  return out;
}

AuditInputs InputsFromJson(const Json& j) {
  AuditInputs in;
  in.data_source = j.at("data_source").get<std::string>();
  in.n = j.at("n").get<int>();
  in.feature_dim = j.at("feature_dim").get<int>();
  in.weights = j.at("weights").get<std::vector<double>>();
  in.loss = j.at("loss").get<std::string>();
  in.objective = j.at("objective").get<std::string>();
  in.constraints.x_norm_max = j.at("x_norm_max").get<double>();
  in.constraints.response_bound = j.at("response_bound").get<double>();
  in.constraints.trigger_scale = j.at("trigger_scale").get<double>();
  in.gamma = j.at("gamma").get<double>();
  in.sigma = j.at("sigma").get<double>();
  in.delta = j.at("delta").get<double>();
  in.trials = j.at("trials").get<int64_t>();
  in.alphas = j.at("alphas").get<std::vector<double>>();
  in.seed = j.at("seed").get<uint64_t>();
  in.oracle_budget = j.at("oracle_budget").get<int>();
  return in;
}

Json CheckToJson(const ConsistencyCheck& c) {
  Json out;
  out["name"] = c.name;
  out["lhs"] = c.lhs;
  out["rhs"] = c.rhs;
  out["tolerance"] = c.tolerance;
  out["passed"] = c.passed;
  out["gating"] = c.gating;
  return out;
}

ConsistencyCheck CheckFromJson(const Json& j) {
  return ConsistencyCheck{.name = j.at("name").get<std::string>(),
                          .lhs = j.at("lhs").get<double>(),
                          .rhs = j.at("rhs").get<double>(),
                          .tolerance = j.at("tolerance").get<double>(),
                          .passed = j.at("passed").get<bool>(),
                          .gating = j.at("gating").get<bool>()};
}

}  // namespace

Json AuditReportToJson(const AuditReport& r) {
  Json out;
  out["inputs"] = InputsToJson(r.inputs);
  out["stats"] = StatsToJson(r.stats);
  out["trigger"] = TriggerToJson(r.trigger);
  Json objective = ScaledValueToJson(r.objective);
  objective["closed_form_distortion"] = OptionalDouble(r.closed_form_distortion);
  out["objective"] = std::move(objective);

  Json risk;
  risk["direct"] = r.risk_gap.direct;
  risk["closed_form"] = r.risk_gap.closed_form;
  risk["unscaled"] = r.risk_gap.unscaled;
  out["risk_gap"] = std::move(risk);

  Json grad;
  grad["norm_direct"] = r.gradient_gap.norm_direct;
  grad["norm_closed_form"] = r.gradient_gap.norm_closed_form;
  grad["norm_square_loss_form"] = r.gradient_gap.norm_square_loss_form;
  grad["objective"] = ScaledValueToJson(r.gradient_gap.objective);
  out["gradient_gap"] = std::move(grad);
  out["mixture_identity_gap"] = r.mixture_identity_gap;

  Json snr;
  snr["definitional"] = r.snr.from_stats.definitional;
  snr["reduced"] = r.snr.from_stats.reduced;
  snr["from_datasets"] = r.snr.from_datasets;
  snr["reduced_to_definitional"] = r.snr.reduced_to_definitional;
  out["snr"] = std::move(snr);

  out["analytic_curve"] = CurveToJson(r.analytic_curve);
  out["monte_carlo"] = DistinguisherToJson(r.monte_carlo);
  out["budget"] = BudgetToJson(r.budget);
  Json bound;
  bound["value"] = OptionalDouble(r.budget_lower_bound.value);
  bound["reason"] = r.budget_lower_bound.reason;
  out["budget_lower_bound"] = std::move(bound);

  if (r.oracle.has_value()) {
    Json oracle;
    oracle["trigger"] = TriggerToJson(r.oracle->best.trigger);
    oracle["best"] = ScaledValueToJson(r.oracle->best.value);
    oracle["audited"] = ScaledValueToJson(r.oracle->audited);
    out["oracle"] = std::move(oracle);
  } else {
    out["oracle"] = nullptr;
  }

  Json checks = Json::array();
  for (const ConsistencyCheck& c : r.checks) checks.push_back(CheckToJson(c));
  out["checks"] = std::move(checks);
  out["consistent"] = r.consistent;
  return out;
}

absl::StatusOr<AuditReport> AuditReportFromJson(const Json& j) {
  try {
    AuditReport r;
    r.inputs = InputsFromJson(j.at("inputs"));
    r.stats = Take(StatsFromJson(j.at("stats")));
    r.trigger = Take(TriggerFromJson(j.at("trigger")));
    const Json& objective = j.at("objective");
    r.objective = Take(ScaledValueFromJson(objective));
    if (!objective.at("closed_form_distortion").is_null()) {
      r.closed_form_distortion =
          objective.at("closed_form_distortion").get<double>();
    }
    const Json& risk = j.at("risk_gap");
    r.risk_gap.direct = risk.at("direct").get<double>();
    r.risk_gap.closed_form = risk.at("closed_form").get<double>();
    r.risk_gap.unscaled = risk.at("unscaled").get<double>();
    const Json& grad = j.at("gradient_gap");
    r.gradient_gap.norm_direct = grad.at("norm_direct").get<double>();
    r.gradient_gap.norm_closed_form = grad.at("norm_closed_form").get<double>();
    r.gradient_gap.norm_square_loss_form =
        grad.at("norm_square_loss_form").get<double>();
    r.gradient_gap.objective = Take(ScaledValueFromJson(grad.at("objective")));
    r.mixture_identity_gap = j.at("mixture_identity_gap").get<double>();
    const Json& snr = j.at("snr");
    r.snr.from_stats.definitional = snr.at("definitional").get<double>();
    r.snr.from_stats.reduced = snr.at("reduced").get<double>();
    r.snr.from_datasets = snr.at("from_datasets").get<double>();
    r.snr.reduced_to_definitional = snr.at("reduced_to_definitional").get<double>();
    r.analytic_curve = Take(CurveFromJson(j.at("analytic_curve")));
    r.monte_carlo = Take(DistinguisherFromJson(j.at("monte_carlo")));
    r.budget = Take(BudgetFromJson(j.at("budget")));
    const Json& bound = j.at("budget_lower_bound");
    if (!bound.at("value").is_null()) {
      r.budget_lower_bound.value = bound.at("value").get<double>();
    }
    r.budget_lower_bound.reason = bound.at("reason").get<std::string>();
    if (!j.at("oracle").is_null()) {
      const Json& oracle = j.at("oracle");
      OracleComparison cmp;
      cmp.best.trigger = Take(TriggerFromJson(oracle.at("trigger")));
      cmp.best.value = Take(ScaledValueFromJson(oracle.at("best")));
      cmp.audited = Take(ScaledValueFromJson(oracle.at("audited")));
      r.oracle = std::move(cmp);
    }
    for (const Json& c : j.at("checks")) r.checks.push_back(CheckFromJson(c));
    r.consistent = j.at("consistent").get<bool>();
    return r;
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed audit report: ", e.what()));
  } catch (const std::invalid_argument& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed audit report: ", e.what()));
  }
}

std::string SerializeAuditReport(const AuditReport& report) {
  return AuditReportToJson(report).dump(2) + "\n";
}

absl::StatusOr<AuditReport> ParseAuditReport(std::string_view text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("audit report is not valid JSON");
  }
  return AuditReportFromJson(j);
}

}  // namespace badgd
